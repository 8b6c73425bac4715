use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use velo_ffi::*;

const HONEYCOMB: &str = "dim 2\nvertex A\nvertex B\nedge A B 0 0\nedge A B 0 1\nedge A B -1 0\nedge B A 0 0\nedge B A 0 -1\nedge B A 1 0\n";
const SQUARE: &str = "dim 2\nvertex V\nedge V V 1 0\nedge V V -1 0\nedge V V 0 1\nedge V V 0 -1\n";

unsafe fn graph(text: &str) -> *mut VeloGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(velo_graph_parse(c.as_ptr(), &mut g), VeloStatus::Ok);
    g
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    velo_string_free(s);
    owned
}

#[test]
fn honeycomb_pipeline() {
    unsafe {
        let g = graph(HONEYCOMB);
        assert_eq!(velo_graph_dim(g), 2);
        assert_eq!(velo_graph_vertex_count(g), 2);
        assert_eq!(velo_graph_edge_count(g), 6);

        let mut verdict = VeloVerdict::Disconnected;
        assert_eq!(velo_graph_verdict(g, &mut verdict), VeloStatus::Ok);
        assert_eq!(verdict, VeloVerdict::StronglyConnectedPeriodic);

        let mut p = ptr::null_mut();
        assert_eq!(velo_velocity_polytope(g, &mut p), VeloStatus::Ok);
        assert_eq!(velo_polytope_vertex_count(p), 6);

        let mut s = ptr::null_mut();
        let x = [1i64, 0];
        assert_eq!(velo_polytope_gauge(p, x.as_ptr(), 2, &mut s), VeloStatus::Ok);
        assert_eq!(take(s), "2");

        let mut json = ptr::null_mut();
        assert_eq!(velo_polytope_to_json(p, &mut json), VeloStatus::Ok);
        let json = CString::new(take(json)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(velo_polytope_from_json(json.as_ptr(), &mut q), VeloStatus::Ok);
        let mut inside = false;
        assert_eq!(velo_polytope_contains(p, q, &mut inside), VeloStatus::Ok);
        assert!(inside);

        let mut r = ptr::null_mut();
        assert_eq!(velo_realize(q, &mut r), VeloStatus::Ok);
        assert_eq!(velo_graph_vertex_count(r), 2);
        assert_eq!(velo_graph_edge_count(r), 7);
        let mut dgf = ptr::null_mut();
        assert_eq!(velo_graph_serialize(r, &mut dgf), VeloStatus::Ok);
        assert!(take(dgf).starts_with("dim 2\nvertex u1\nvertex u2\n"));

        velo_graph_free(r);
        velo_polytope_free(q);
        velo_polytope_free(p);
        velo_graph_free(g);
    }
}

#[test]
fn square_not_inside_hexagon() {
    unsafe {
        let (h, s) = (graph(HONEYCOMB), graph(SQUARE));
        let (mut ph, mut ps) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(velo_velocity_polytope(h, &mut ph), VeloStatus::Ok);
        assert_eq!(velo_velocity_polytope(s, &mut ps), VeloStatus::Ok);
        let mut inside = true;
        assert_eq!(velo_polytope_contains(ph, ps, &mut inside), VeloStatus::Ok);
        assert!(!inside);
        velo_polytope_free(ph);
        velo_polytope_free(ps);
        velo_graph_free(h);
        velo_graph_free(s);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new("dim 2\nedge A B 0 0\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(velo_graph_parse(bad.as_ptr(), &mut g), VeloStatus::Parse);
        assert!(g.is_null());
        let msg = CStr::from_ptr(velo_last_error()).to_str().unwrap();
        assert!(msg.contains("line 2"), "{msg}");

        assert_eq!(velo_graph_parse(ptr::null(), &mut g), VeloStatus::NullPointer);

        let path = graph("dim 1\nvertex A\nvertex B\nedge A B 1\n");
        let mut p = ptr::null_mut();
        assert_eq!(velo_velocity_polytope(path, &mut p), VeloStatus::Connectivity);
        velo_graph_free(path);

        let loops = graph("dim 1\nvertex A\nedge A A 2\nedge A A -2\n");
        let mut verdict = VeloVerdict::Disconnected;
        assert_eq!(velo_graph_verdict(loops, &mut verdict), VeloStatus::Ok);
        assert_eq!(verdict, VeloVerdict::QuotientConnectedOnly);
        velo_graph_free(loops);

        velo_graph_free(ptr::null_mut());
        velo_polytope_free(ptr::null_mut());
        velo_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/velo.h")).unwrap();
    for name in ["velo_graph_parse", "velo_velocity_polytope", "velo_realize", "VELO_STATUS_BUDGET"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a small C program against the header and static
/// library when a C compiler is available.
#[test]
fn c_program_links() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let target = std::env::temp_dir().join("velo_ffi_target");
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "velo-ffi", "--lib", "--target-dir"])
        .arg(&target)
        .current_dir(&dir)
        .status()
        .unwrap();
    assert!(built.success());
    let lib = target.join("debug/libvelo_ffi.a");
    let exe = std::env::temp_dir().join(format!("velo_capi_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "vertices 6\ngauge 2\n");
}
