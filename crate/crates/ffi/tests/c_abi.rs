use std::ffi::{c_char, CStr, CString};
use std::ptr;

use topoarg_ffi::*;

const TEXT: &str = "The lion is an animal. The lion is created by evolution. Every animal is created by evolution.";

fn write_table(dir: &std::path::Path) -> CString {
    let words = ["the", "lion", "is", "an", "animal", ".", "created", "by", "evolution", "every"];
    let mut body = String::new();
    for (i, w) in words.iter().enumerate() {
        let row: Vec<String> = (0..4).map(|k| format!("{:.3}", ((i * 5 + k * 3) % 7) as f64 / 3.0 - 1.0)).collect();
        body.push_str(&format!("{w} {}\n", row.join(" ")));
    }
    let path = dir.join("table.txt");
    std::fs::write(&path, body).unwrap();
    CString::new(path.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = topoarg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    topoarg_string_free(p);
    s
}

unsafe fn load(dir: &std::path::Path) -> *mut TopoargTable {
    let mut table = ptr::null_mut();
    assert_eq!(topoarg_table_load(write_table(dir).as_ptr(), 4, &mut table), TopoargStatus::Ok);
    table
}

unsafe fn analyze_seed(table: *const TopoargTable, seed: u64) -> *mut TopoargDiagram {
    let text = CString::new(TEXT).unwrap();
    let id = CString::new("syl").unwrap();
    let mut options = topoarg_analysis_options_default();
    options.seed = seed;
    let mut diagram = ptr::null_mut();
    assert_eq!(topoarg_analyze(table, id.as_ptr(), text.as_ptr(), &options, &mut diagram), TopoargStatus::Ok);
    diagram
}

#[test]
fn analyze_and_read_pairs() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let table = load(dir.path());
        assert_eq!(topoarg_table_dimension(table), 4);
        assert_eq!(topoarg_table_len(table), 10);

        let diagram = analyze_seed(table, 42);
        let n = topoarg_diagram_len(diagram);
        assert!(n > 0);
        let mut essential = 0;
        for i in 0..n {
            let mut pair = TopoargPair { dimension: 9, birth: 0.0, death: 0.0 };
            assert_eq!(topoarg_diagram_pair(diagram, i, &mut pair), TopoargStatus::Ok);
            assert!(pair.dimension <= 1 && pair.birth <= pair.death);
            essential += usize::from(pair.death.is_infinite());
        }
        assert_eq!(essential, 1);

        let mut pair = TopoargPair { dimension: 0, birth: 0.0, death: 0.0 };
        assert_eq!(topoarg_diagram_pair(diagram, n, &mut pair), TopoargStatus::OutOfRange);
        assert!(last_error().contains("out of range"));

        topoarg_diagram_free(diagram);
        topoarg_table_free(table);
    }
}

#[test]
fn json_round_trip_and_bottleneck() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let table = load(dir.path());
        let a = analyze_seed(table, 1);
        let b = analyze_seed(table, 2);

        let mut json = ptr::null_mut();
        assert_eq!(topoarg_diagram_to_json(a, &mut json), TopoargStatus::Ok);
        let json = take_string(json);
        assert!(json.contains("\"text_id\":\"syl\""));

        let c_json = CString::new(json.clone()).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(topoarg_diagram_from_json(c_json.as_ptr(), &mut back), TopoargStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(topoarg_diagram_to_json(back, &mut again), TopoargStatus::Ok);
        assert_eq!(take_string(again), json);

        let mut d = -1.0;
        assert_eq!(topoarg_bottleneck(a, back, 0, &mut d), TopoargStatus::Ok);
        assert_eq!(d, 0.0);
        let mut ab = -1.0;
        let mut ba = -1.0;
        assert_eq!(topoarg_bottleneck(a, b, 0, &mut ab), TopoargStatus::Ok);
        assert_eq!(topoarg_bottleneck(b, a, 0, &mut ba), TopoargStatus::Ok);
        assert_eq!(ab, ba);
        assert!(ab.is_finite() && ab >= 0.0);

        let mut svg = ptr::null_mut();
        assert_eq!(topoarg_diagram_to_svg(a, ptr::null(), &mut svg), TopoargStatus::Ok);
        assert!(take_string(svg).contains("<svg"));

        for d in [a, b, back] {
            topoarg_diagram_free(d);
        }
        topoarg_table_free(table);
    }
}

#[test]
fn errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let mut table = ptr::null_mut();
        let missing = CString::new("/nonexistent/table.txt").unwrap();
        assert_eq!(topoarg_table_load(missing.as_ptr(), 0, &mut table), TopoargStatus::InvalidInput);
        assert!(table.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(topoarg_table_load(write_table(dir.path()).as_ptr(), 5, &mut table), TopoargStatus::InvalidInput);
        assert_eq!(topoarg_table_load(ptr::null(), 0, &mut table), TopoargStatus::NullArgument);
        assert_eq!(
            topoarg_table_load(write_table(dir.path()).as_ptr(), 0, ptr::null_mut()),
            TopoargStatus::NullArgument
        );

        let bad_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(
            topoarg_table_load(bad_utf8.as_ptr().cast(), 0, &mut table),
            TopoargStatus::InvalidUtf8
        );

        let table = load(dir.path());
        let mut diagram = ptr::null_mut();
        let unknown = CString::new("zzz qqq").unwrap();
        assert_eq!(
            topoarg_analyze(table, ptr::null(), unknown.as_ptr(), ptr::null(), &mut diagram),
            TopoargStatus::InvalidInput
        );
        let text = CString::new(TEXT).unwrap();
        let mut options = topoarg_analysis_options_default();
        options.takens_dimension = 0;
        assert_eq!(
            topoarg_analyze(table, ptr::null(), text.as_ptr(), &options, &mut diagram),
            TopoargStatus::InvalidInput
        );
        let not_json = CString::new("{").unwrap();
        assert_eq!(topoarg_diagram_from_json(not_json.as_ptr(), &mut diagram), TopoargStatus::InvalidInput);
        assert!(diagram.is_null());

        topoarg_table_free(table);
        topoarg_table_free(ptr::null_mut());
        topoarg_diagram_free(ptr::null_mut());
        topoarg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/topoarg.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["TopoargStatus", "TopoargTable", "TopoargDiagram", "TopoargPair", "TopoargAnalysisOptions"] {
        assert!(header.contains(ty), "{ty}");
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let example = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/analyze.c");
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = std::process::Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I", include, example])
            .status();
        match status {
            Ok(status) => assert!(status.success(), "{compiler} rejected the header"),
            Err(_) => eprintln!("{compiler} not available; skipping"),
        }
    }
}
