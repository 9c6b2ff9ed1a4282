use std::ffi::{CStr, CString};
use std::ptr;

use sinkopt_ffi::*;

fn parse(text: &str) -> *mut SinkoptGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sinkopt_graph_parse(c.as_ptr(), &mut g) }, SinkoptStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = sinkopt_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_handle_lifecycle() {
    let g = parse("# path\n1 2\n2 3\n");
    unsafe {
        assert_eq!(sinkopt_graph_node_count(g), 3);
        assert_eq!(sinkopt_graph_edge_count(g), 2);
        let mut labels = [0u64; 3];
        assert_eq!(sinkopt_graph_labels(g, labels.as_mut_ptr(), 3), SinkoptStatus::Ok);
        assert_eq!(labels, [1, 2, 3]);
        assert_eq!(sinkopt_graph_labels(g, labels.as_mut_ptr(), 2), SinkoptStatus::BufferTooSmall);
        sinkopt_graph_free(g);
        sinkopt_graph_free(ptr::null_mut());
        assert_eq!(sinkopt_graph_node_count(ptr::null()), 0);
    }
}

#[test]
fn parse_failures_carry_codes() {
    let mut g = ptr::null_mut();
    let bad = CString::new("1 2 3\n").unwrap();
    assert_eq!(unsafe { sinkopt_graph_parse(bad.as_ptr(), &mut g) }, SinkoptStatus::ParseError);
    assert!(g.is_null());
    assert!(last_error().contains("line 1"));
    let split = CString::new("1 2\n3 4\n").unwrap();
    assert_eq!(unsafe { sinkopt_graph_parse(split.as_ptr(), &mut g) }, SinkoptStatus::InvalidGraph);
    assert_eq!(unsafe { sinkopt_graph_parse(ptr::null(), &mut g) }, SinkoptStatus::NullPointer);
}

#[test]
fn objective_and_hitting_times() {
    let g = parse("1 2\n2 3\n");
    unsafe {
        let mut f = 0.0;
        assert_eq!(sinkopt_objective(g, [1u64].as_ptr(), 1, &mut f), SinkoptStatus::Ok);
        assert!((f - 7.0).abs() < 1e-12);
        let mut h = [f64::NAN; 3];
        assert_eq!(sinkopt_hitting_times(g, [1u64].as_ptr(), 1, h.as_mut_ptr(), 3), SinkoptStatus::Ok);
        assert_eq!(h[0], 0.0);
        assert!((h[1] - 3.0).abs() < 1e-12 && (h[2] - 4.0).abs() < 1e-12);
        assert_eq!(sinkopt_objective(g, [9u64].as_ptr(), 1, &mut f), SinkoptStatus::InvalidArgument);
        assert!(last_error().contains('9'));
        assert_eq!(sinkopt_objective(g, ptr::null(), 0, &mut f), SinkoptStatus::InvalidArgument);
        sinkopt_graph_free(g);
    }
}

#[test]
fn selection_entry_points() {
    let g = parse("1 2\n2 3\n3 4\n4 1\n");
    unsafe {
        let mut out = [0u64; 4];
        let mut len = 0;
        assert_eq!(sinkopt_vertex_cover(g, out.as_mut_ptr(), 4, &mut len), SinkoptStatus::Ok);
        assert_eq!(&out[..len], &[1, 2, 3, 4]);

        let mut f = 0.0;
        assert_eq!(sinkopt_oracle(g, 2, out.as_mut_ptr(), 4, &mut f), SinkoptStatus::Ok);
        assert_eq!(&out[..2], &[1, 3]);
        assert!((f - 2.0).abs() < 1e-12);

        assert_eq!(sinkopt_greedy(g, 1, out.as_mut_ptr(), 4, &mut f), SinkoptStatus::Ok);
        assert_eq!(out[0], 1);
        assert!((f - 10.0).abs() < 1e-9);

        assert_eq!(sinkopt_solve(g, 2, 0.7, out.as_mut_ptr(), 4, &mut f), SinkoptStatus::Ok);
        assert!((f - 2.0).abs() < 1e-12);

        assert_eq!(sinkopt_greedy(g, 9, out.as_mut_ptr(), 4, &mut f), SinkoptStatus::InvalidArgument);
        assert_eq!(sinkopt_greedy(g, 2, out.as_mut_ptr(), 1, ptr::null_mut()), SinkoptStatus::BufferTooSmall);
        sinkopt_graph_free(g);
    }
}

#[test]
fn cli_dispatch_round_trip() {
    let dir = std::env::temp_dir().join(format!("sinkopt-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.edges");
    std::fs::write(&path, "1 2\n2 3\n").unwrap();
    let args: Vec<CString> = ["sinkopt", "oracle", "--graph", path.to_str().unwrap(), "--k", "1"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<_> = args.iter().map(|s| s.as_ptr()).collect();
    let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
    unsafe {
        assert_eq!(
            sinkopt_dispatch_json(argv.as_ptr(), argv.len(), &mut out, &mut err, &mut code),
            SinkoptStatus::Ok
        );
        assert_eq!(code, 0);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(json["set"], serde_json::json!([2]));
        assert_eq!(json["F"], serde_json::json!(2.0));
        sinkopt_string_free(out);
        sinkopt_string_free(err);

        let argv2 = [argv[0], argv[1], argv[4], argv[5]];
        assert_eq!(
            sinkopt_dispatch_json(argv2.as_ptr(), 4, &mut out, &mut err, &mut code),
            SinkoptStatus::Ok
        );
        assert_eq!(code, 2);
        assert!(CStr::from_ptr(err).to_str().unwrap().contains("--graph"));
        sinkopt_string_free(out);
        sinkopt_string_free(err);
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sinkopt.h")).unwrap();
    for name in [
        "sinkopt_graph_parse",
        "sinkopt_graph_free",
        "sinkopt_graph_node_count",
        "sinkopt_graph_edge_count",
        "sinkopt_graph_labels",
        "sinkopt_objective",
        "sinkopt_hitting_times",
        "sinkopt_vertex_cover",
        "sinkopt_greedy",
        "sinkopt_oracle",
        "sinkopt_solve",
        "sinkopt_dispatch_json",
        "sinkopt_string_free",
        "sinkopt_last_error_message",
        "typedef struct SinkoptGraph SinkoptGraph",
        "SINKOPT_STATUS_BUFFER_TOO_SMALL = 8",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
