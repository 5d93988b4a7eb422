//! Builds a small C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "ulambda.h"

int main(void) {
    UlCandidate *cand = NULL;
    if (ul_candidate_extremal(0.5, 3.141592653589793, 16, &cand) != UL_STATUS_OK) return 10;
    UlComplex coeffs[17];
    size_t written = 0;
    if (ul_candidate_coefficients(cand, coeffs, 17, &written) != UL_STATUS_OK || written != 17) return 11;
    if (fabs(coeffs[2].re - 1.5) > 1e-12) return 12;
    UlMembership m;
    if (ul_candidate_membership(cand, &m) != UL_STATUS_OK) return 13;
    if (m.verdict != UL_VERDICT_INSIDE) return 14;
    ul_candidate_free(cand);

    double v = 0.0;
    if (ul_v_of_x(2.0, &v) != UL_STATUS_INVALID_ARGUMENT) return 15;
    char msg[128];
    if (ul_last_error_message(msg, sizeof msg) == 0) return 16;

    UlDisk *disk = NULL;
    if (ul_disk_from_json("{\"kind\":\"moebius\",\"a\":[0.25,0.0]}", &disk) != UL_STATUS_OK) return 17;
    UlComplex w;
    UlComplex origin = {0.0, 0.0};
    if (ul_disk_eval(disk, origin, &w) != UL_STATUS_OK || fabs(w.re - 0.25) > 1e-15) return 18;
    ul_disk_free(disk);
    printf("ok %s\n", ul_version());
    return 0;
}
"#;

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(header_dir().join("ulambda.h")).unwrap();
    for name in [
        "typedef struct UlDisk UlDisk;",
        "typedef struct UlCandidate UlCandidate;",
        "UL_STATUS_OK = 0",
        "UL_STATUS_PANIC",
        "ul_last_error_message",
        "ul_candidate_membership",
        "ul_fixed_point_zero",
        "#ifndef ULAMBDA_H",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // target/<profile>/deps/<test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libulambda_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());

    let tmp = tempfile::TempDir::new().unwrap();
    let src = tmp.path().join("main.c");
    let bin = tmp.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
