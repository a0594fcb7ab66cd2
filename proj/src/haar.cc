// Copyright 2026 The qeclab Authors
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

#include "qeclab/haar.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qeclab/circuit.h"
#include "qeclab/errors.h"

namespace qeclab {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd ginibre(size_t rows, size_t cols, Rng &rng) {
    Eigen::MatrixXcd g(rows, cols);
    // Column-major fill keeps the draw order independent of Eigen internals.
    for (size_t c = 0; c < cols; c++) {
        for (size_t r = 0; r < rows; r++) {
            double re = standard_normal(rng);
            double im = standard_normal(rng);
            g(r, c) = cd(re, im) * M_SQRT1_2;
        }
    }
    return g;
}

/// Q factor of a tall, well conditioned g through two Cholesky passes. Cheaper
/// than Householder for 2^N x 2^k isometries, and R keeps a positive
/// diagonal so no phase fix is needed.
Eigen::MatrixXcd cholesky_q(const Eigen::MatrixXcd &g) {
    Eigen::MatrixXcd q = g;
    for (int pass = 0; pass < 2; pass++) {
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(q.cols(), q.cols());
        gram.selfadjointView<Eigen::Lower>().rankUpdate(q.adjoint());
        Eigen::LLT<Eigen::MatrixXcd> llt(gram);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("Cholesky orthonormalization failed");
        }
        // q <- q R^{-1} with R = L^dagger.
        llt.matrixU().solveInPlace<Eigen::OnTheRight>(q);
    }
    return q;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd &g) {
    if (g.rows() >= 8 * g.cols()) {
        return cholesky_q(g);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    const Eigen::MatrixXcd &r = qr.matrixQR();
    for (Eigen::Index c = 0; c < g.cols(); c++) {
        cd d = r(c, c);
        double a = std::abs(d);
        cd ph = a > 0 ? d / a : cd(1, 0);
        q.col(c) *= ph;
    }
    return q;
}

/// scatter[t] = basis index whose bits on `qubits` spell t (others zero).
std::vector<size_t> scatter_table(const std::vector<size_t> &qubits) {
    std::vector<size_t> out(size_t{1} << qubits.size(), 0);
    for (size_t t = 0; t < out.size(); t++) {
        size_t v = 0;
        for (size_t b = 0; b < qubits.size(); b++) {
            if ((t >> b) & 1) {
                v |= size_t{1} << qubits[b];
            }
        }
        out[t] = v;
    }
    return out;
}

void split_qubits(size_t n, std::span<const size_t> subset, std::vector<size_t> &a, std::vector<size_t> &b) {
    std::vector<bool> in(n, false);
    for (size_t q : subset) {
        if (q >= n) {
            throw std::invalid_argument("subset qubit out of range");
        }
        in[q] = true;
    }
    a.clear();
    b.clear();
    for (size_t q = 0; q < n; q++) {
        (in[q] ? a : b).push_back(q);
    }
}

Eigen::MatrixXcd pauli_matrix(const PauliOperator &p) {
    size_t n = p.num_qubits();
    size_t dim = size_t{1} << n;
    size_t xm = 0;
    size_t zm = 0;
    for (size_t q = 0; q < n; q++) {
        xm |= (size_t)p.x().get(q) << q;
        zm |= (size_t)p.z().get(q) << q;
    }
    static const cd kIPow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    cd base = kIPow[std::popcount(xm & zm) & 3] * (p.negative() ? -1.0 : 1.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t j = 0; j < dim; j++) {
        double s = (std::popcount(zm & j) & 1) ? -1.0 : 1.0;
        m(j ^ xm, j) = base * s;
    }
    return m;
}

}  // namespace

Eigen::MatrixXcd haar_unitary_dim(size_t dim, Rng &rng) {
    return orthonormalize(ginibre(dim, dim, rng));
}

Eigen::MatrixXcd haar_unitary(size_t num_qubits, Rng &rng) {
    if (num_qubits > kMaxHaarUnitaryQubits) {
        throw ResourceLimitError(
            "dense Haar unitary limited to " + std::to_string(kMaxHaarUnitaryQubits) + " qubits, got " +
            std::to_string(num_qubits));
    }
    return haar_unitary_dim(size_t{1} << num_qubits, rng);
}

Eigen::MatrixXcd haar_isometry(size_t rows, size_t cols, Rng &rng) {
    if (cols > rows) {
        throw std::invalid_argument("isometry needs cols <= rows");
    }
    return orthonormalize(ginibre(rows, cols, rng));
}

double spectrum_entropy(const Eigen::MatrixXcd &rho) {
    if (rho.rows() == 0) {
        return 0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
        double l = es.eigenvalues()(i);
        if (l > 1e-14) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

double subsystem_entropy(const DenseState &state, std::span<const size_t> subset) {
    std::vector<size_t> a;
    std::vector<size_t> b;
    split_qubits(state.num_qubits, subset, a, b);
    if (a.size() > b.size()) {
        std::swap(a, b);
    }
    if (a.empty()) {
        return 0;
    }
    auto sa = scatter_table(a);
    auto sb = scatter_table(b);
    Eigen::MatrixXcd psi(sa.size(), sb.size());
    for (size_t j = 0; j < sb.size(); j++) {
        for (size_t i = 0; i < sa.size(); i++) {
            psi(i, j) = state.amps[sa[i] | sb[j]];
        }
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    return spectrum_entropy(rho);
}

double density_subsystem_entropy(const Eigen::MatrixXcd &rho, size_t num_qubits, std::span<const size_t> subset) {
    std::vector<size_t> a;
    std::vector<size_t> b;
    split_qubits(num_qubits, subset, a, b);
    auto sa = scatter_table(a);
    auto sb = scatter_table(b);
    Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(sa.size(), sa.size());
    for (size_t i = 0; i < sa.size(); i++) {
        for (size_t j = 0; j < sa.size(); j++) {
            cd acc = 0;
            for (size_t t = 0; t < sb.size(); t++) {
                acc += rho(sa[i] | sb[t], sa[j] | sb[t]);
            }
            red(i, j) = acc;
        }
    }
    return spectrum_entropy(red);
}

void apply_pauli(DenseState &state, const PauliOperator &p) {
    if (p.num_qubits() > state.num_qubits) {
        throw std::invalid_argument("Pauli acts on more qubits than the state has");
    }
    size_t xm = 0;
    size_t zm = 0;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        xm |= (size_t)p.x().get(q) << q;
        zm |= (size_t)p.z().get(q) << q;
    }
    static const cd kIPow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    cd base = kIPow[std::popcount(xm & zm) & 3] * (p.negative() ? -1.0 : 1.0);
    Eigen::VectorXcd out(state.amps.size());
    for (size_t j = 0; j < (size_t)state.amps.size(); j++) {
        double s = (std::popcount(zm & j) & 1) ? -1.0 : 1.0;
        out[j ^ xm] = base * s * state.amps[j];
    }
    state.amps = std::move(out);
}

void apply_two_qubit(DenseState &state, const Eigen::Matrix4cd &u, size_t i, size_t j) {
    if (i == j || i >= state.num_qubits || j >= state.num_qubits) {
        throw std::invalid_argument("bad qubits for two-qubit gate");
    }
    size_t bi = size_t{1} << i;
    size_t bj = size_t{1} << j;
    size_t dim = (size_t)state.amps.size();
    for (size_t base = 0; base < dim; base++) {
        if (base & (bi | bj)) {
            continue;
        }
        size_t idx[4] = {base, base | bi, base | bj, base | bi | bj};
        cd v[4];
        for (int t = 0; t < 4; t++) {
            v[t] = state.amps[idx[t]];
        }
        for (int r = 0; r < 4; r++) {
            cd acc = 0;
            for (int c = 0; c < 4; c++) {
                acc += u(r, c) * v[c];
            }
            state.amps[idx[r]] = acc;
        }
    }
}

DenseState stabilizer_state_with_references(const SubsystemCode &code, Rng &rng) {
    size_t n = code.num_qubits();
    size_t refs = code.num_logicals() + code.num_gauge();
    size_t total = n + refs;
    if (total > 20) {
        throw ResourceLimitError("reference-purified stabilizer state limited to 20 qubits");
    }
    std::vector<PauliOperator> gens;
    auto widen = [&](const PauliOperator &p) {
        PauliOperator w(total);
        for (size_t q = 0; q < n; q++) {
            w.x().set(q, p.x().get(q));
            w.z().set(q, p.z().get(q));
        }
        w.set_negative(p.negative());
        return w;
    };
    for (const auto &s : code.stabilizers) {
        gens.push_back(widen(s));
    }
    size_t ref = n;
    for (const auto *list : {&code.logicals, &code.gauges}) {
        for (const auto &pair : *list) {
            PauliOperator gx = widen(pair.x);
            gx.x().set(ref, true);
            PauliOperator gz = widen(pair.z);
            gz.z().set(ref, true);
            gens.push_back(gx);
            gens.push_back(gz);
            ref++;
        }
    }
    DenseState st;
    st.num_qubits = total;
    st.amps = Eigen::VectorXcd(size_t{1} << total);
    for (Eigen::Index j = 0; j < st.amps.size(); j++) {
        st.amps[j] = cd(standard_normal(rng), standard_normal(rng));
    }
    for (const auto &g : gens) {
        DenseState moved = st;
        apply_pauli(moved, g);
        st.amps = (st.amps + moved.amps) * 0.5;
    }
    double norm = st.amps.norm();
    if (norm < 1e-12) {
        throw std::logic_error("projection onto the stabilizer state vanished");
    }
    st.amps /= norm;
    return st;
}

Eigen::MatrixXcd stabilizer_density_matrix(const SubsystemCode &code) {
    size_t n = code.num_qubits();
    if (n > 10) {
        throw ResourceLimitError("dense density matrix limited to 10 qubits");
    }
    size_t dim = size_t{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
    std::vector<const PauliOperator *> group;
    for (const auto &s : code.stabilizers) {
        group.push_back(&s);
    }
    for (const auto &g : code.gauges) {
        group.push_back(&g.x);
    }
    for (const PauliOperator *g : group) {
        Eigen::MatrixXcd proj = (Eigen::MatrixXcd::Identity(dim, dim) + pauli_matrix(*g)) * 0.5;
        rho = proj * rho;
    }
    cd tr = rho.trace();
    return rho / tr.real();
}

HaarTrialResult erasure_information(const DenseState &state, size_t n, size_t k, const ErasurePattern &pattern) {
    if (state.num_qubits != n + k) {
        throw std::invalid_argument("state does not have N + k qubits");
    }
    std::vector<bool> erased(n, false);
    for (size_t q : pattern.sites) {
        if (q >= n) {
            throw std::invalid_argument("erased site out of range");
        }
        erased[q] = true;
    }
    std::vector<size_t> e_sites(pattern.sites.begin(), pattern.sites.end());
    std::vector<size_t> kept;
    for (size_t q = 0; q < n; q++) {
        if (!erased[q]) {
            kept.push_back(q);
        }
    }
    HaarTrialResult r;
    r.n = n;
    r.k = k;
    r.n_e = e_sites.size();
    double s_kept = subsystem_entropy(state, kept);
    double s_erased = subsystem_entropy(state, e_sites);
    r.i_c = s_kept - s_erased;
    r.i_re = (double)k - r.i_c;
    return r;
}

HaarTrialResult haar_erasure_trial(
    size_t n, size_t k, const ErasurePattern &pattern, Rng &rng, HaarEncoding encoding, size_t circuit_depth) {
    if (k > n) {
        throw std::invalid_argument("k cannot exceed N");
    }
    if (n + k > kMaxDenseQubits) {
        throw ResourceLimitError("dense state limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    DenseState st;
    st.num_qubits = n + k;
    if (encoding == HaarEncoding::Dense) {
        if (n > kMaxHaarUnitaryQubits) {
            throw ResourceLimitError(
                "dense Haar encoding limited to " + std::to_string(kMaxHaarUnitaryQubits) +
                " qubits; use the local-circuit encoding");
        }
        // A Haar unitary applied to |r>|0...0> only uses its first 2^k
        // columns, which form a Haar isometry. Qubits 0..N-1 are the
        // system, so amps[q + 2^N r] = V(q, r) / sqrt(2^k).
        Eigen::MatrixXcd v = haar_isometry(size_t{1} << n, size_t{1} << k, rng);
        st.amps = Eigen::Map<Eigen::VectorXcd>(v.data(), v.size()) / std::sqrt((double)(size_t{1} << k));
    } else {
        Geometry geom = Geometry::chain(n);
        std::vector<size_t> logical = default_logical_sites(geom, k);
        size_t dim = size_t{1} << (n + k);
        st.amps = Eigen::VectorXcd::Zero(dim);
        double amp = 1 / std::sqrt((double)(size_t{1} << k));
        for (size_t r = 0; r < (size_t{1} << k); r++) {
            size_t idx = r << n;
            for (size_t j = 0; j < k; j++) {
                if ((r >> j) & 1) {
                    idx |= size_t{1} << logical[j];
                }
            }
            st.amps[idx] = amp;
        }
        for (size_t layer = 0; layer < circuit_depth; layer++) {
            for (const auto &[a, b] : layer_schedule(geom, layer, rng)) {
                Eigen::Matrix4cd u = haar_unitary_dim(4, rng);
                apply_two_qubit(st, u, a, b);
            }
        }
    }
    return erasure_information(st, n, k, pattern);
}

}  // namespace qeclab
