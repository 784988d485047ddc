#include <stdio.h>
#include <string.h>

#include "towercalc.h"

#define CHECK(expr)                                                         \
  do {                                                                      \
    if (!(expr)) {                                                          \
      fprintf(stderr, "failed: %s (%s)\n", #expr, tc_last_error_message()); \
      return 1;                                                             \
    }                                                                       \
  } while (0)

int main(void) {
  TcComplex *m = NULL, *power = NULL;
  CHECK(tc_complex_moore(3, 5, &m) == TC_STATUS_OK);
  CHECK(tc_complex_smash_power(m, 4, &power) == TC_STATUS_OK);

  char *text = NULL;
  CHECK(tc_complex_to_json(power, &text) == TC_STATUS_OK);
  CHECK(strstr(text, "\"dim\":21,\"mult\":3") != NULL);
  tc_string_free(text);

  int64_t chi = 0;
  CHECK(tc_layer_euler(5, 7, 3, &chi) == TC_STATUS_OK && chi == 1);
  CHECK(tc_layer_euler(5, 4, 3, &chi) == TC_STATUS_NOT_PRIME);
  CHECK(strlen(tc_last_error_message()) > 0);

  uint32_t degree[2] = {3, 3};
  uint64_t count = 0;
  CHECK(tc_witt_count(degree, 2, &count) == TC_STATUS_OK && count == 3);

  tc_complex_free(power);
  tc_complex_free(m);
  printf("ok %s\n", tc_version());
  return 0;
}
