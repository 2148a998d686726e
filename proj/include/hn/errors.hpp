#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hn {

// Host oracle failures (destabilizer searches and their guards).
struct oracle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : oracle_error {
  using oracle_error::oracle_error;
};
struct tie_error : oracle_error {
  using oracle_error::oracle_error;
};

// Destabilizer failure inside the sequence construction; carries the
// partial chain built so far.
template <typename Sub>
struct hn_sequence_error : oracle_error {
  std::vector<Sub> partial_chain;
  hn_sequence_error(const std::string& msg, std::vector<Sub> chain)
      : oracle_error(msg), partial_chain(std::move(chain)) {}
};

}  // namespace hn
