#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
// CLI tests are added once the binary exists.
