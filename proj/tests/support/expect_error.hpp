#pragma once

#include <gtest/gtest.h>

#include "cycleforge/error.hpp"

/// Runs `stmt`, expecting a cycleforge::Error with the given code.
#define EXPECT_CF_ERROR(stmt, expected_code)                                  \
  do {                                                                        \
    bool cf_thrown_ = false;                                                  \
    try {                                                                     \
      stmt;                                                                   \
    } catch (const ::cycleforge::Error& cf_e_) {                              \
      cf_thrown_ = true;                                                      \
      EXPECT_EQ(cf_e_.code(), expected_code) << cf_e_.what();                 \
    }                                                                         \
    EXPECT_TRUE(cf_thrown_) << "expected " << ::cycleforge::to_string(expected_code); \
  } while (0)
