#include <stdio.h>
#include <string.h>
#include "qweight.h"

int main(void) {
    QwScalar *a = NULL, *b = NULL, *c = NULL;
    char *text = NULL;
    if (qw_scalar_parse("1 - q", &a) != QW_STATUS_OK) return 1;
    if (qw_scalar_parse("1 + q", &b) != QW_STATUS_OK) return 2;
    if (qw_scalar_binary(QW_OP_MUL, a, b, &c) != QW_STATUS_OK) return 3;
    if (qw_scalar_to_string(c, &text) != QW_STATUS_OK) return 4;
    int ok = strcmp(text, "1 - q^2") == 0;
    printf("%s\n", text);
    qw_string_free(text);
    if (qw_scalar_parse("((", &a) != QW_STATUS_PARSE) return 5;
    printf("%s\n", qw_last_error());
    qw_scalar_free(a);
    qw_scalar_free(b);
    qw_scalar_free(c);
    return ok ? 0 : 6;
}
