// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <span>
#include <tuple>
#include <vector>

#include "gqc/sequence.hpp"
#include "gqc/statevec.hpp"

namespace gqc {

struct RunOptions {
    /// Per-instruction accuracy of non-diagonal exponentials.
    double tol = 1e-12;
    /// Replace repeat blocks by powers of their dense body unitary when the
    /// support has at most `max_fused_qubits` active sites.
    bool fuse_repeats = true;
    std::size_t max_fused_qubits = 10;
    /// Check the norm after every top-level item. The allowed drift of the
    /// squared norm is norm_tol + 2 tol per instruction executed so far.
    bool check_unitarity = true;
    double norm_tol = 1e-10;
};

/// The smallest set of sites, containing `start`, outside of which every
/// instruction of `sequence` keeps all bits at 0. Simulating over this set is
/// exact for inputs supported on `start`.
BasisIndex reachable_support(const Layout& layout, const GlobalGateSequence& sequence, BasisIndex start);

struct BlockResult {
    /// Entry (b, b') = <encode(b)| S |encode(b')> for the sequence product S.
    Eigen::MatrixXcd block;
    /// Largest norm outside the admissible subspace over admissible inputs.
    double leakage = 0.0;
    SiteSupport support;
};

class SequenceRunner {
   public:
    explicit SequenceRunner(std::shared_ptr<const Layout> layout, RunOptions options = {});

    const RunOptions& options() const { return options_; }

    /// Applies the sequence in order. Throws std::logic_error when the state's
    /// support is not closed under the sequence.
    PureState run(const GlobalGateSequence& sequence, PureState state);
    void run(const GlobalGateSequence& sequence, const SiteSupport& support, std::span<cplx> state);

    /// Runs every admissible basis state over the reachable support.
    BlockResult admissible_block(const GlobalGateSequence& sequence);

    /// Dense product of the sequence over `support` (dimension <= 2^12).
    Eigen::MatrixXcd dense_unitary(const GlobalGateSequence& sequence, const SiteSupport& support);

    void apply_instruction(const GateInstruction& g, const SiteSupport& support, std::span<cplx> state);

   private:
    const GlobalOperator& operator_for(const GlobalHamiltonian& h);
    const Eigen::MatrixXcd& fused_power(const RepeatBlock& rep, const SiteSupport& support);
    void apply_to_columns(const GlobalGateSequence& seq, const SiteSupport& support, Eigen::MatrixXcd& m);

    std::shared_ptr<const Layout> layout_;
    RunOptions options_;
    std::vector<std::tuple<Matrix4, GroupElement, GlobalOperator>> operators_;
    std::map<std::tuple<const GlobalGateSequence*, std::uint64_t, std::uint64_t>,
             std::pair<std::shared_ptr<const GlobalGateSequence>, Eigen::MatrixXcd>>
        fused_;
};

}  // namespace gqc
