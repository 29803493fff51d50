//! C interface to `topoarg`.
//!
//! Objects cross the boundary as opaque pointers (`TopoargTable`,
//! `TopoargDiagram`) that the caller releases with the matching `_free`
//! function. Every fallible call returns a `TopoargStatus`; on failure the
//! message is available from `topoarg_last_error()` on the same thread.
//! Strings returned by the library are NUL-terminated UTF-8 and must be
//! released with `topoarg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use topoarg::diagram::{bottleneck_distance, diagram_from_json, diagram_to_json, render_svg, SvgOptions};
use topoarg::embeddings::{load_glove_path, EmbeddingTable};
use topoarg::persistence::{PersistenceDiagram, PersistenceOptions};
use topoarg::pipeline::{analyze, AnalysisConfig};
use topoarg::series::ProjectionSeed;
use topoarg::takens::DelayParams;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopoargStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Bad input data or parameters; see `topoarg_last_error`.
    InvalidInput = 3,
    /// Index outside the valid range.
    OutOfRange = 4,
    /// A bug in the library, including caught panics.
    Internal = 5,
}

/// Loaded word-embedding table.
pub struct TopoargTable(EmbeddingTable);

/// Persistence diagram.
pub struct TopoargDiagram(PersistenceDiagram);

/// Parameters for `topoarg_analyze`. Obtain defaults from
/// `topoarg_analysis_options_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TopoargAnalysisOptions {
    pub seed: u64,
    pub takens_dimension: usize,
    pub takens_delay: usize,
    /// 0 or 1.
    pub max_homology_dim: usize,
    /// Ignored unless `has_threshold` is set; the cloud diameter is used then.
    pub threshold: f64,
    pub has_threshold: bool,
    pub keep_zero_bars: bool,
}

/// One (birth, death) pair. `death` is positive infinity for essential
/// classes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopoargPair {
    pub dimension: u32,
    pub birth: f64,
    pub death: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

struct Failure(TopoargStatus, String);

impl From<topoarg::Error> for Failure {
    fn from(e: topoarg::Error) -> Self {
        let status = if e.is_input_error() {
            TopoargStatus::InvalidInput
        } else {
            TopoargStatus::Internal
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> TopoargStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TopoargStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            TopoargStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(TopoargStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TopoargStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(TopoargStatus::NullArgument, format!("{name} is null")))
}

fn out_arg<T>(p: *mut T, name: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(Failure(TopoargStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(TopoargStatus::Internal, "output contains NUL".to_string()))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn topoarg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn topoarg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a GloVe text file. `expected_dimension` 0 accepts any width.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_table_load(
    path: *const c_char,
    expected_dimension: usize,
    out: *mut *mut TopoargTable,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let path = str_arg(path, "path")?;
        let expected = (expected_dimension > 0).then_some(expected_dimension);
        let table = load_glove_path(path, expected)?;
        *out = Box::into_raw(Box::new(TopoargTable(table)));
        Ok(())
    })
}

/// Vector width of the table, or 0 for null.
///
/// # Safety
/// `table` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn topoarg_table_dimension(table: *const TopoargTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.dimension())
}

/// Number of words in the table, or 0 for null.
///
/// # Safety
/// `table` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn topoarg_table_len(table: *const TopoargTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `table` must be null or a live table handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn topoarg_table_free(table: *mut TopoargTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

#[no_mangle]
pub extern "C" fn topoarg_analysis_options_default() -> TopoargAnalysisOptions {
    let delay = DelayParams::default();
    let persistence = PersistenceOptions::default();
    TopoargAnalysisOptions {
        seed: ProjectionSeed::default().0,
        takens_dimension: delay.dimension,
        takens_delay: delay.delay,
        max_homology_dim: persistence.max_homology_dim,
        threshold: 0.0,
        has_threshold: false,
        keep_zero_bars: persistence.keep_zero_bars,
    }
}

/// Runs the full pipeline on `text`. `text_id` may be null; it is only
/// recorded in the diagram metadata. `options` null means defaults.
///
/// # Safety
/// Pointers must be null or valid as documented; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_analyze(
    table: *const TopoargTable,
    text_id: *const c_char,
    text: *const c_char,
    options: *const TopoargAnalysisOptions,
    out: *mut *mut TopoargDiagram,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let table = ref_arg(table, "table")?;
        let text = str_arg(text, "text")?;
        let text_id = if text_id.is_null() { "text" } else { str_arg(text_id, "text_id")? };
        let options = options.as_ref().copied().unwrap_or_else(|| topoarg_analysis_options_default());
        let config = AnalysisConfig {
            text_id: text_id.to_string(),
            text: text.to_string(),
            seed: ProjectionSeed(options.seed),
            delay: DelayParams::new(options.takens_dimension, options.takens_delay)?,
            persistence: PersistenceOptions {
                max_homology_dim: options.max_homology_dim,
                threshold: options.has_threshold.then_some(options.threshold),
                keep_zero_bars: options.keep_zero_bars,
            },
        };
        let diagram = analyze(&table.0, &config)?;
        *out = Box::into_raw(Box::new(TopoargDiagram(diagram)));
        Ok(())
    })
}

/// Number of pairs, or 0 for null.
///
/// # Safety
/// `diagram` must be null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_len(diagram: *const TopoargDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.0.pairs.len())
}

/// Copies pair `index` (in canonical order) into `out`.
///
/// # Safety
/// `diagram` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_pair(
    diagram: *const TopoargDiagram,
    index: usize,
    out: *mut TopoargPair,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let diagram = ref_arg(diagram, "diagram")?;
        let pair = diagram.0.pairs.get(index).ok_or_else(|| {
            Failure(
                TopoargStatus::OutOfRange,
                format!("pair index {index} out of range for {} pairs", diagram.0.pairs.len()),
            )
        })?;
        *out = TopoargPair {
            dimension: pair.homology_dimension as u32,
            birth: pair.birth,
            death: pair.death,
        };
        Ok(())
    })
}

/// Canonical JSON encoding. Free the result with `topoarg_string_free`.
///
/// # Safety
/// `diagram` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_to_json(
    diagram: *const TopoargDiagram,
    out: *mut *mut c_char,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let diagram = ref_arg(diagram, "diagram")?;
        let json = String::from_utf8(diagram_to_json(&diagram.0))
            .map_err(|e| Failure(TopoargStatus::Internal, e.to_string()))?;
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// Parses a diagram from its JSON encoding.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_from_json(
    json: *const c_char,
    out: *mut *mut TopoargDiagram,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let json = str_arg(json, "json")?;
        let diagram = diagram_from_json(json.as_bytes())?;
        *out = Box::into_raw(Box::new(TopoargDiagram(diagram)));
        Ok(())
    })
}

/// SVG rendering with default size. `title` may be null. Free the result
/// with `topoarg_string_free`.
///
/// # Safety
/// `diagram` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_to_svg(
    diagram: *const TopoargDiagram,
    title: *const c_char,
    out: *mut *mut c_char,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let diagram = ref_arg(diagram, "diagram")?;
        let title = if title.is_null() { None } else { Some(str_arg(title, "title")?.to_string()) };
        let options = SvgOptions { title, ..SvgOptions::default() };
        *out = into_c_string(render_svg(&diagram.0, &options))?;
        Ok(())
    })
}

/// Bottleneck distance between the degree-`homology_dim` parts of two
/// diagrams. Writes positive infinity when the essential class counts differ.
///
/// # Safety
/// `a` and `b` must be live diagram handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn topoarg_bottleneck(
    a: *const TopoargDiagram,
    b: *const TopoargDiagram,
    homology_dim: usize,
    out: *mut f64,
) -> TopoargStatus {
    guard(|| {
        out_arg(out, "out")?;
        let a = ref_arg(a, "a")?;
        let b = ref_arg(b, "b")?;
        *out = bottleneck_distance(&a.0, &b.0, homology_dim).distance;
        Ok(())
    })
}

/// # Safety
/// `diagram` must be null or a live diagram handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn topoarg_diagram_free(diagram: *mut TopoargDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}
