#pragma once

#include <cmath>

#include <doctest.h>

#define CHECK_NEAR(actual, expected, tol) CHECK(std::abs((actual) - (expected)) <= (tol))
#define REQUIRE_NEAR(actual, expected, tol) REQUIRE(std::abs((actual) - (expected)) <= (tol))

#define CHECK_THROWS_KIND(expr, expected_kind)                         \
    do {                                                               \
        bool thrown_ = false;                                          \
        try {                                                          \
            (void)(expr);                                              \
        } catch (const ::cpig::Error& e_) {                            \
            thrown_ = true;                                            \
            CHECK(e_.kind() == (expected_kind));                       \
        }                                                              \
        CHECK_MESSAGE(thrown_, "expected a cpig::Error: " #expr);      \
    } while (0)
