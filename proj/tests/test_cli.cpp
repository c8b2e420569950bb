#include <catch_amalgamated.hpp>
TEST_CASE("placeholder"){CHECK(true);}
