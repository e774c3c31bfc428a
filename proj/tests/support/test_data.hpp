#pragma once

#include <string>

#include "turanlab/zeros.hpp"

namespace testdata {

inline std::string zeros_path() { return std::string(TURANLAB_TEST_DATA_DIR) + "/zeros_10k.txt"; }

inline const turanlab::ZeroDataset& zeros() {
  static const turanlab::ZeroDataset z = turanlab::load_zeros(zeros_path());
  return z;
}

}  // namespace testdata
