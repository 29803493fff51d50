/* Build: cargo build -p topoarg-ffi --release
 *        cc -Icrates/ffi/include crates/ffi/examples/analyze.c \
 *           target/release/libtopoarg_ffi.a -lpthread -ldl -lm -o analyze
 * Run:   ./analyze glove.6B.50d.txt "the text to analyze"
 */
#include <stdio.h>

#include "topoarg.h"

int main(int argc, char **argv) {
  if (argc != 3) {
    fprintf(stderr, "usage: %s GLOVE_FILE TEXT\n", argv[0]);
    return 1;
  }
  TopoargTable *table = NULL;
  if (topoarg_table_load(argv[1], 0, &table) != TOPOARG_STATUS_OK) {
    fprintf(stderr, "error: %s\n", topoarg_last_error());
    return 1;
  }
  TopoargAnalysisOptions options = topoarg_analysis_options_default();
  TopoargDiagram *diagram = NULL;
  if (topoarg_analyze(table, "argv", argv[2], &options, &diagram) != TOPOARG_STATUS_OK) {
    fprintf(stderr, "error: %s\n", topoarg_last_error());
    topoarg_table_free(table);
    return 1;
  }
  for (size_t i = 0; i < topoarg_diagram_len(diagram); i++) {
    TopoargPair pair;
    topoarg_diagram_pair(diagram, i, &pair);
    printf("H%u %g %g\n", pair.dimension, pair.birth, pair.death);
  }
  topoarg_diagram_free(diagram);
  topoarg_table_free(table);
  return 0;
}
