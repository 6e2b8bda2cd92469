// Copyright 2026 The holdcircle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use holdcircle_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hc_last_error()) }.to_string_lossy().into_owned()
}

fn cube() -> *mut HcPolytope {
    let mut xyz = Vec::new();
    for i in 0..8 {
        xyz.extend([(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
    }
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hc_polytope_from_points(xyz.as_ptr(), 8, &mut p) }, HcStatus::Ok);
    p
}

#[test]
fn cube_measures() {
    let p = cube();
    let (mut n, mut f, mut w, mut vol, mut d) = (0usize, 0usize, 0.0, 0.0, 0.0);
    let mut dir = [0.0; 3];
    let mut v = [0.0; 3];
    unsafe {
        assert_eq!(hc_polytope_vertex_count(p, &mut n), HcStatus::Ok);
        assert_eq!(hc_polytope_face_count(p, &mut f), HcStatus::Ok);
        assert_eq!(hc_width(p, &mut w, dir.as_mut_ptr()), HcStatus::Ok);
        assert_eq!(hc_polytope_volume(p, &mut vol), HcStatus::Ok);
        assert_eq!(hc_min_cylinder(p, &mut d), HcStatus::Ok);
        assert_eq!(hc_polytope_vertex(p, 7, v.as_mut_ptr()), HcStatus::Ok);
        assert_eq!(hc_polytope_vertex(p, 8, v.as_mut_ptr()), HcStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        hc_polytope_free(p);
    }
    assert_eq!((n, f), (8, 6));
    assert!((w - 1.0).abs() < 1e-12);
    assert!((vol - 1.0).abs() < 1e-12);
    assert!((d - 2f64.sqrt()).abs() < 1e-4);
    assert!((dir[0].abs() + dir[1].abs() + dir[2].abs() - 1.0).abs() < 1e-12);
}

#[test]
fn errors_are_reported() {
    let mut p = ptr::null_mut();
    let flat = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0];
    unsafe {
        assert_eq!(hc_polytope_from_points(flat.as_ptr(), 4, &mut p), HcStatus::Degenerate);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(hc_polytope_from_points(ptr::null(), 4, &mut p), HcStatus::NullPointer);
        assert_eq!(hc_polytope_from_json(c"{\"vertices\": 3}".as_ptr(), &mut p), HcStatus::Parse);
        let mut w = 0.0;
        assert_eq!(hc_width(ptr::null(), &mut w, ptr::null_mut()), HcStatus::NullPointer);
        assert_eq!(hc_octahedron_iceberg(0.5, 5.0, &mut p, ptr::null_mut()), HcStatus::InvalidArgument);
        let c = cube();
        let bad = HcCircle { center: [0.5; 3], diameter: -1.0, normal: [0.0, 0.0, 1.0] };
        let mut r = ptr::null_mut();
        assert_eq!(hc_holding_report(c, &bad, 100, 0, &mut r), HcStatus::InvalidArgument);
        hc_polytope_free(c);
        hc_polytope_free(ptr::null_mut());
        hc_report_free(ptr::null_mut());
        hc_string_free(ptr::null_mut());
    }
}

#[test]
fn octahedron_report_round_trip() {
    let mut p = ptr::null_mut();
    let mut circle = HcCircle { center: [0.0; 3], diameter: 0.0, normal: [0.0; 3] };
    let mut r = ptr::null_mut();
    let mut verdict = HcVerdict::Inconclusive;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(hc_octahedron_iceberg(1.38, 5.0, &mut p, &mut circle), HcStatus::Ok);
        assert!((circle.diameter - 2.695881606531159).abs() < 1e-12);
        assert_eq!(hc_holding_report(p, &circle, 3000, 1, &mut r), HcStatus::Ok);
        assert_eq!(hc_report_verdict(r, &mut verdict), HcStatus::Ok);
        assert_eq!(hc_report_to_json(r, &mut json), HcStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hc_string_free(json);
        hc_report_free(r);
        hc_polytope_free(p);
        assert!(text.contains("\"verdict\": \"CertifiedHoldingEvidence\""));
    }
    assert_eq!(verdict, HcVerdict::CertifiedHoldingEvidence);
}

#[test]
fn flat_tetrahedron_search() {
    let mut p = ptr::null_mut();
    let mut found = HcCircle { center: [0.0; 3], diameter: 0.0, normal: [0.0; 3] };
    unsafe {
        assert_eq!(hc_flat_tetrahedron(0.2, &mut p, ptr::null_mut()), HcStatus::Ok);
        assert_eq!(hc_min_holding_circle(p, 2000, 0, &mut found), HcStatus::Ok);
        hc_polytope_free(p);
    }
    assert!((found.diameter - 2.0 * 0.2f64.atan().sin()).abs() < 1e-3);
}

#[test]
fn version_matches_manifest() {
    let v = unsafe { CStr::from_ptr(hc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/holdcircle.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "hc_version",
        "hc_last_error",
        "hc_polytope_from_points",
        "hc_polytope_from_json",
        "hc_polytope_free",
        "hc_width",
        "hc_min_cylinder",
        "hc_holding_report",
        "hc_report_verdict",
        "hc_report_to_json",
        "hc_report_free",
        "hc_string_free",
        "typedef struct HcPolytope HcPolytope;",
        "HC_STATUS_OK = 0",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "holdcircle.h"

int main(void) {
    double xyz[24];
    for (int i = 0; i < 8; i++) {
        xyz[3 * i] = i & 1;
        xyz[3 * i + 1] = (i >> 1) & 1;
        xyz[3 * i + 2] = (i >> 2) & 1;
    }
    HcPolytope *p = NULL;
    if (hc_polytope_from_points(xyz, 8, &p) != HC_STATUS_OK) return 1;
    double w = 0.0;
    if (hc_width(p, &w, NULL) != HC_STATUS_OK) return 2;
    hc_polytope_free(p);
    if (hc_polytope_from_points(NULL, 8, &p) != HC_STATUS_NULL_POINTER) return 3;
    printf("%.6f %s\n", w, hc_version());
    return 0;
}
"#;

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = header().parent().unwrap().to_path_buf();
    let out = Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-std=c11", "-x", "c", "-"])
        .arg("-I")
        .arg(&include)
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(C_PROGRAM.as_bytes())?;
            child.wait_with_output()
        })
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_against_static_library() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // Integration tests run from target/<profile>/deps.
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(|d| d.parent()).map(|d| d.join("libholdcircle_ffi.a")).unwrap();
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), format!("1.000000 {}", env!("CARGO_PKG_VERSION")));
}
