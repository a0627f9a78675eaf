#![no_main]

use horocenter::polytope::{off, validate, TangentPolytope, DEFAULT_EDGE_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mesh) = off::parse(text) {
        // writing is lossless
        let again = off::parse(&off::write(&mesh, 0)).expect("written OFF parses");
        assert_eq!(again, mesh);
    }
    if let Ok(poly) = TangentPolytope::from_off(text) {
        let _ = validate(&poly, DEFAULT_EDGE_TOL);
        assert_eq!(
            TangentPolytope::from_off(&poly.to_off()).expect("round trip"),
            poly
        );
    }
});
