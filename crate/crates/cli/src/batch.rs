use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::commands::Job;
use crate::report::{EXIT_INVALID, EXIT_OK};

pub struct Io {
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub jobs: usize,
    pub timestamp: bool,
    pub verbose: bool,
}

/// Runs `job` on a file, or on every matching file of a directory.
/// Returns the process exit code (the largest per-file code in batch mode).
pub fn run(job: &Job, input: &Path, io: &Io) -> i32 {
    if input.is_dir() {
        run_dir(job, input, io)
    } else {
        run_file(job, input, io.output.as_deref(), io.report.as_deref(), io)
    }
}

fn run_file(job: &Job, input: &Path, output: Option<&Path>, report: Option<&Path>, io: &Io) -> i32 {
    let bytes = match fs::read(input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return EXIT_INVALID;
        }
    };
    let name = input
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let outcome = job.run(&name, &bytes);
    if io.verbose {
        for line in &outcome.log {
            eprintln!("{name}: {line}");
        }
    }
    let mut code = outcome.report.exit_status;
    if let Some(err) = &outcome.report.error {
        eprintln!("{name}: {err}");
    }
    let report_json = outcome.report.to_json(io.timestamp);
    // verify produces nothing but its report
    let primary = match job {
        Job::Verify { .. } => Some(report_json.clone()),
        _ => outcome.output,
    };
    if let Some(text) = &primary {
        match output {
            Some(path) => code = write_or_fail(path, text, code),
            None => print!("{text}"),
        }
    }
    if let Some(path) = report {
        code = write_or_fail(path, &report_json, code);
    }
    code
}

fn write_or_fail(path: &Path, text: &str, code: i32) -> i32 {
    match fs::write(path, text) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", path.display());
            code.max(EXIT_INVALID)
        }
    }
}

fn run_dir(job: &Job, dir: &Path, io: &Io) -> i32 {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .filter(|p| {
                p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| job.accepts(e))
            })
            .collect(),
        Err(e) => {
            eprintln!("error: cannot list {}: {e}", dir.display());
            return EXIT_INVALID;
        }
    };
    files.sort();
    let needs_output = !matches!(job, Job::Verify { .. });
    if needs_output && io.output.is_none() {
        eprintln!("error: directory input needs --output <DIR>");
        return EXIT_INVALID;
    }
    for d in [io.output.as_deref(), io.report.as_deref()]
        .into_iter()
        .flatten()
    {
        if let Err(e) = fs::create_dir_all(d) {
            eprintln!("error: cannot create {}: {e}", d.display());
            return EXIT_INVALID;
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(io.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return EXIT_INVALID;
        }
    };
    let codes: Vec<i32> = pool.install(|| {
        files
            .par_iter()
            .map(|f| {
                let name = f.file_name().expect("listed files have names");
                let stem = f
                    .file_stem()
                    .expect("listed files have names")
                    .to_string_lossy();
                let output = io.output.as_ref().map(|d| {
                    if needs_output {
                        d.join(name)
                    } else {
                        d.join(format!("{stem}.report.json"))
                    }
                });
                let report = io
                    .report
                    .as_ref()
                    .map(|d| d.join(format!("{stem}.report.json")));
                let quiet = Io {
                    output: None,
                    report: None,
                    ..*io
                };
                run_file(job, f, output.as_deref(), report.as_deref(), &quiet)
            })
            .collect()
    });
    for (f, code) in files.iter().zip(&codes) {
        eprintln!("{}: exit {code}", f.display());
    }
    codes.into_iter().max().unwrap_or(EXIT_OK)
}
