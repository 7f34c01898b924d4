use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use oddcycle_ffi::*;

fn parse(text: &str, format: OcFormat) -> (OcStatus, *mut OcGraph) {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { oc_graph_parse(c.as_ptr(), format, &mut g) };
    (status, g)
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { oc_string_free(s) };
    text
}

fn last_error() -> String {
    let p = oc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn classify_orient_verify_round_trip() {
    let (status, g) = parse("0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n", OcFormat::Edgelist);
    assert_eq!(status, OcStatus::Ok);
    unsafe {
        assert_eq!(oc_graph_vertex_count(g), 5);
        assert_eq!(oc_graph_edge_count(g), 6);
        let mut member = false;
        let mut json = ptr::null_mut();
        assert_eq!(oc_classify(g, &mut member, &mut json), OcStatus::Ok);
        assert!(member);
        assert!(take(json).contains("\"in_g1\":true"));

        let mut orientation = ptr::null_mut();
        assert_eq!(oc_orient(g, 4, &mut orientation), OcStatus::Ok);
        let text = CString::new(take(orientation)).unwrap();
        let mut kp = false;
        assert_eq!(oc_verify_kernel_perfect(text.as_ptr(), &mut kp), OcStatus::Ok);
        assert!(kp);

        assert_eq!(oc_orient(g, 3, &mut orientation), OcStatus::Precondition);
        assert!(last_error().contains("t = 3"));
        oc_graph_free(g);
    }
}

#[test]
fn choose_edges_and_errors() {
    let (status, g) = parse("Dhc", OcFormat::Graph6);
    assert_eq!(status, OcStatus::Ok);
    unsafe {
        let lists = CString::new(r#"{"0":[1,2,3],"1":[1,2,3],"2":[2,3,4],"3":[1,3,4],"4":[1,2,4]}"#).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(oc_choose_edges(g, lists.as_ptr(), &mut out), OcStatus::Ok);
        let coloring: std::collections::BTreeMap<usize, u32> = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(coloring.len(), 5);
        let short = CString::new(r#"{"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2],"4":[1,2]}"#).unwrap();
        assert_eq!(oc_choose_edges(g, short.as_ptr(), &mut out), OcStatus::Precondition);
        let mut text = ptr::null_mut();
        assert_eq!(oc_graph_write(g, OcFormat::Graph6, &mut text), OcStatus::Ok);
        assert_eq!(take(text).trim(), "Dhc");
        oc_graph_free(g);
    }
    let (status, g) = parse("0 1\n1 1\n", OcFormat::Edgelist);
    assert_eq!(status, OcStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("loop"));
}

#[test]
fn not_in_class_and_null_handles() {
    let ends: Vec<usize> = (0..5).flat_map(|a| (a + 1..5).flat_map(move |b| [a, b])).collect();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(oc_graph_from_edges(5, ends.as_ptr(), 10, &mut g), OcStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(oc_orient(g, 4, &mut out), OcStatus::NotInClass);
        let mut member = true;
        assert_eq!(oc_classify(g, &mut member, ptr::null_mut()), OcStatus::Ok);
        assert!(!member);
        oc_graph_free(g);
        assert_eq!(oc_classify(ptr::null(), &mut member, ptr::null_mut()), OcStatus::NullPointer);
        assert_eq!(oc_graph_edge_count(ptr::null()), 0);
        oc_graph_free(ptr::null_mut());
        oc_string_free(ptr::null_mut());
    }
}

/// Compiles and runs a small C program against the generated header and
/// the static library when a C compiler is available.
#[test]
fn c_header_smoke() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("oddcycle.h").exists());
    let target =
        std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or_else(|| manifest.join("../../target"));
    let lib = ["debug", "release"].iter().map(|p| target.join(p).join("liboddcycle_ffi.a")).find(|p| p.exists());
    let (Some(lib), Ok(_)) = (lib, Command::new("cc").arg("--version").output()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "oddcycle.h"
int main(void) {
    OcGraph *g = NULL;
    if (oc_graph_parse("C~", OC_FORMAT_GRAPH6, &g) != OC_STATUS_OK) return 1;
    bool member = false;
    if (oc_classify(g, &member, NULL) != OC_STATUS_OK || !member) return 2;
    char *json = NULL;
    if (oc_orient(g, 4, &json) != OC_STATUS_OK) return 3;
    bool kp = false;
    if (oc_verify_kernel_perfect(json, &kp) != OC_STATUS_OK || !kp) return 4;
    oc_string_free(json);
    if (oc_orient(g, 2, &json) != OC_STATUS_PRECONDITION) return 5;
    printf("%s\n", oc_last_error_message());
    oc_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("below the required"));
}
