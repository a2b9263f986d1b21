#pragma once

#include "autovmd/error.hpp"

#include <doctest.h>

// Code of the autovmd::Error thrown by fn; fails the test if none is thrown.
template <class Fn>
autovmd::ErrorCode code_of(Fn&& fn)
{
  try {
    fn();
  } catch (const autovmd::Error& e) {
    return e.code();
  }
  FAIL("expected an autovmd::Error");
  return autovmd::ErrorCode::BadConfig;
}
