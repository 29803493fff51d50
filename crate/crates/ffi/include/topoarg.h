/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TOPOARG_H
#define TOPOARG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TopoargStatus {
  TOPOARG_STATUS_OK = 0,
  // A required pointer argument was null.
  TOPOARG_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  TOPOARG_STATUS_INVALID_UTF8 = 2,
  // Bad input data or parameters; see `topoarg_last_error`.
  TOPOARG_STATUS_INVALID_INPUT = 3,
  // Index outside the valid range.
  TOPOARG_STATUS_OUT_OF_RANGE = 4,
  // A bug in the library, including caught panics.
  TOPOARG_STATUS_INTERNAL = 5,
} TopoargStatus;

// Persistence diagram.
typedef struct TopoargDiagram TopoargDiagram;

// Loaded word-embedding table.
typedef struct TopoargTable TopoargTable;

// Parameters for `topoarg_analyze`. Obtain defaults from
// `topoarg_analysis_options_default`.
typedef struct TopoargAnalysisOptions {
  uint64_t seed;
  uintptr_t takens_dimension;
  uintptr_t takens_delay;
  // 0 or 1.
  uintptr_t max_homology_dim;
  // Ignored unless `has_threshold` is set; the cloud diameter is used then.
  double threshold;
  bool has_threshold;
  bool keep_zero_bars;
} TopoargAnalysisOptions;

// One (birth, death) pair. `death` is positive infinity for essential
// classes.
typedef struct TopoargPair {
  uint32_t dimension;
  double birth;
  double death;
} TopoargPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *topoarg_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void topoarg_string_free(char *s);

// Loads a GloVe text file. `expected_dimension` 0 accepts any width.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum TopoargStatus topoarg_table_load(const char *path,
                                      uintptr_t expected_dimension,
                                      struct TopoargTable **out);

// Vector width of the table, or 0 for null.
//
// # Safety
// `table` must be null or a live table handle.
uintptr_t topoarg_table_dimension(const struct TopoargTable *table);

// Number of words in the table, or 0 for null.
//
// # Safety
// `table` must be null or a live table handle.
uintptr_t topoarg_table_len(const struct TopoargTable *table);

// # Safety
// `table` must be null or a live table handle; it is invalid afterwards.
void topoarg_table_free(struct TopoargTable *table);

struct TopoargAnalysisOptions topoarg_analysis_options_default(void);

// Runs the full pipeline on `text`. `text_id` may be null; it is only
// recorded in the diagram metadata. `options` null means defaults.
//
// # Safety
// Pointers must be null or valid as documented; `out` must be writable.
enum TopoargStatus topoarg_analyze(const struct TopoargTable *table,
                                   const char *text_id,
                                   const char *text,
                                   const struct TopoargAnalysisOptions *options,
                                   struct TopoargDiagram **out);

// Number of pairs, or 0 for null.
//
// # Safety
// `diagram` must be null or a live diagram handle.
uintptr_t topoarg_diagram_len(const struct TopoargDiagram *diagram);

// Copies pair `index` (in canonical order) into `out`.
//
// # Safety
// `diagram` must be a live diagram handle; `out` must be writable.
enum TopoargStatus topoarg_diagram_pair(const struct TopoargDiagram *diagram,
                                        uintptr_t index,
                                        struct TopoargPair *out);

// Canonical JSON encoding. Free the result with `topoarg_string_free`.
//
// # Safety
// `diagram` must be a live diagram handle; `out` must be writable.
enum TopoargStatus topoarg_diagram_to_json(const struct TopoargDiagram *diagram, char **out);

// Parses a diagram from its JSON encoding.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum TopoargStatus topoarg_diagram_from_json(const char *json, struct TopoargDiagram **out);

// SVG rendering with default size. `title` may be null. Free the result
// with `topoarg_string_free`.
//
// # Safety
// `diagram` must be a live diagram handle; `out` must be writable.
enum TopoargStatus topoarg_diagram_to_svg(const struct TopoargDiagram *diagram,
                                          const char *title,
                                          char **out);

// Bottleneck distance between the degree-`homology_dim` parts of two
// diagrams. Writes positive infinity when the essential class counts differ.
//
// # Safety
// `a` and `b` must be live diagram handles; `out` must be writable.
enum TopoargStatus topoarg_bottleneck(const struct TopoargDiagram *a,
                                      const struct TopoargDiagram *b,
                                      uintptr_t homology_dim,
                                      double *out);

// # Safety
// `diagram` must be null or a live diagram handle; it is invalid afterwards.
void topoarg_diagram_free(struct TopoargDiagram *diagram);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPOARG_H */
