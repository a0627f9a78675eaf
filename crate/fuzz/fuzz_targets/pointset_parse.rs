#![no_main]

use horocenter::pointset::PointSetFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = PointSetFile::parse(text) {
        assert_eq!(
            PointSetFile::parse(&file.to_json()).expect("round trip"),
            file
        );
        let _ = file.configuration(false, 1e-9);
        let _ = file.configuration(true, 1e-9);
    }
});
