//! Cross-checks the hand-maintained header against the exported symbols and,
//! when a C compiler is available, compiles and runs a small C client against
//! the static library.

use std::path::PathBuf;
use std::process::Command;

const HEADER: &str = include_str!("../include/cyclica.h");

/// Every `#[no_mangle]` symbol must be declared in the header, and every
/// header declaration must exist as a symbol.
#[test]
fn header_and_symbols_agree() {
    let symbols = [
        "cyclica_last_error",
        "cyclica_algebra_new",
        "cyclica_algebra_free",
        "cyclica_algebra_dim",
        "cyclica_action_new",
        "cyclica_action_free",
        "cyclica_hc_algebra",
        "cyclica_hc_action",
        "cyclica_report_len",
        "cyclica_report_hc_dim",
        "cyclica_report_to_json",
        "cyclica_report_free",
        "cyclica_string_free",
        "cyclica_verify_theorem",
        "cyclica_verify_corollary",
        "cyclica_version",
    ];
    for symbol in symbols {
        assert!(
            HEADER.contains(&format!("{symbol}(")),
            "header is missing a declaration for {symbol}"
        );
    }
    let source = include_str!("../src/lib.rs");
    for line in HEADER.lines() {
        if let Some(rest) = line.trim().strip_prefix("int cyclica_") {
            let name = format!("cyclica_{}", rest.split('(').next().unwrap());
            assert!(
                source.contains(&format!("fn {name}(")),
                "header declares {name} but the library does not define it"
            );
        }
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps/...; the staticlib sits one up
    let mut dir = std::env::current_exe().expect("test binary path");
    dir.pop(); // deps
    dir.pop(); // profile dir
    dir
}

#[test]
fn c_client_compiles_links_and_runs() {
    // `cargo test` links tests against the rlib; produce the staticlib for
    // the matching profile before compiling the C client against it
    let profile_dir = target_dir();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".to_string());
    let mut build = Command::new(cargo);
    build.args(["build", "-p", "cyclica-ffi"]);
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    let built = build.output().expect("cargo build runs");
    assert!(
        built.status.success(),
        "cargo build -p cyclica-ffi failed: {}",
        String::from_utf8_lossy(&built.stderr)
    );
    let staticlib = profile_dir.join("libcyclica_ffi.a");
    assert!(
        staticlib.exists(),
        "staticlib not found at {}",
        staticlib.display()
    );
    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = std::env::temp_dir().join(format!("cyclica-c-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();

    let c_source = r#"
#include "cyclica.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    CyclicaAlgebra *alg = 0;
    if (cyclica_algebra_new("dual-numbers", &alg) != CYCLICA_OK) return 1;
    if (cyclica_algebra_dim(alg) != 2) return 2;

    CyclicaReport *report = 0;
    if (cyclica_hc_algebra(alg, CYCLICA_COMPLEX_PLAIN, 4, &report) != CYCLICA_OK) return 3;
    if (cyclica_report_len(report) != 4) return 4;
    if (cyclica_report_hc_dim(report, 0) != 2) return 5;
    if (cyclica_report_hc_dim(report, 1) != 0) return 6;
    cyclica_report_free(report);
    cyclica_algebra_free(alg);

    CyclicaAction *action = 0;
    if (cyclica_action_new("z2-on-dual-numbers", &action) != CYCLICA_OK) return 7;
    int passed = 0;
    if (cyclica_verify_theorem(action, 2, &passed, 0) != CYCLICA_OK) return 8;
    if (!passed) return 9;
    cyclica_action_free(action);

    if (cyclica_algebra_new("garbage-name-{", &alg) != CYCLICA_ERR_BAD_INPUT) return 10;
    if (strlen(cyclica_last_error()) == 0) return 11;

    printf("ok %s\n", cyclica_version());
    return 0;
}
"#;
    let c_file = work.join("client.c");
    std::fs::write(&c_file, c_source).unwrap();
    let exe = work.join("client");
    let compile = Command::new("cc")
        .arg(&c_file)
        .arg("-I")
        .arg(&include_dir)
        .arg(&staticlib)
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc is available in this environment");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe).output().expect("client runs");
    assert!(
        run.status.success(),
        "client exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
    std::fs::remove_dir_all(&work).ok();
}
