#pragma once

#include <cstdint>
#include <string>

#include "qwd/complexity.hpp"
#include "qwd/cost.hpp"
#include "qwd/hermitian.hpp"

namespace qwd {

// Matrices use {"dim": n, "entries": [[[re, im], ...], ...]} (row-major).
// Every parse or file error is reported as InvalidInput.

CMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const CMatrix& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

CMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMatrix& m);
DensityMatrix load_state(const std::string& path);

/// A single matrix object or an array of them.
ObservableSet parse_observables_json(const std::string& text);
ObservableSet load_observables(const std::string& path);
std::string observables_to_json(const ObservableSet& a);

/// {"kraus": [matrix, ...]}
ChannelSpec parse_channel_json(const std::string& text);
ChannelSpec load_channel(const std::string& path);
std::string channel_to_json(const ChannelSpec& phi);

/// `identity`, `unitary:<matrix file>`, `depolarizing:<p>`, `dephasing:<p>`
/// or `file:<channel json>`. `dim` is used by `identity`.
ChannelSpec channel_from_selector(const std::string& selector, int dim);

/// `symmetric`, `pauli-products:<n>`, `random:<k>` (k observables of size
/// `dim` drawn from RngStream(seed, stream)) or `file:<path>`.
ObservableSet observables_from_selector(const std::string& selector, int dim, std::uint64_t seed,
                                        std::uint64_t stream = 0);

}  // namespace qwd
