/* The public header must compile as C and link against the library. */
#include <stdio.h>
#include <string.h>

#include "elastoscat.h"

int main(void) {
  es_config* c = NULL;
  if (es_config_parse("{\"seed\": 3}", &c) != ES_OK) return 1;
  char* json = NULL;
  if (es_config_dump(c, &json) != ES_OK) return 1;
  int ok = strstr(json, "\"seed\": 3") != NULL;
  es_string_free(json);
  es_config_free(c);
  if (es_config_parse("[", &c) != ES_ERR_PARSE || strlen(es_last_error()) == 0) return 1;
  printf("elastoscat %s: C header ok\n", es_version());
  return ok ? 0 : 1;
}
