#include "qre/block_encoding.hpp"

#include <cmath>
#include <sstream>

namespace qre {

namespace {

using Complex = std::complex<double>;

long long ceil_log2(long long n) {
    long long s = 0;
    while ((1LL << s) < n) ++s;
    return s;
}

bool is_power_of_two(long long n) { return n >= 1 && (n & (n - 1)) == 0; }

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long long i = 0; i < a.rows(); ++i)
        for (long long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SymExpr weight_expr(double v) {
    double a = std::abs(v);
    if (a == std::floor(a) && a < 1e15) return SymExpr::integer(static_cast<long long>(a));
    return SymExpr::real(a);
}

SymExpr product_of(const std::vector<BlockEncoding>& parts,
                   SymExpr (*field)(const BlockEncoding&)) {
    std::vector<SymExpr> fs;
    fs.reserve(parts.size());
    for (const auto& p : parts) fs.push_back(field(p));
    return SymExpr::mul(std::move(fs));
}

SymExpr sum_of(const std::vector<BlockEncoding>& parts, SymExpr (*field)(const BlockEncoding&)) {
    std::vector<SymExpr> fs;
    fs.reserve(parts.size());
    for (const auto& p : parts) fs.push_back(field(p));
    return SymExpr::add(std::move(fs));
}

SymExpr max_of(const std::vector<BlockEncoding>& parts, SymExpr (*field)(const BlockEncoding&)) {
    SymExpr m = field(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) m = SymExpr::max(m, field(parts[i]));
    return m;
}

SymExpr get_alpha(const BlockEncoding& p) { return p.alpha; }
SymExpr get_anc(const BlockEncoding& p) { return p.ancillas; }
SymExpr get_sys(const BlockEncoding& p) { return p.system_bitsize; }
SymExpr get_eps(const BlockEncoding& p) { return p.epsilon; }
SymExpr get_alpha_eps(const BlockEncoding& p) { return p.alpha * p.epsilon; }

void check_same_system(const std::vector<BlockEncoding>& parts) {
    for (size_t i = 1; i < parts.size(); ++i)
        if (!(parts[i].system_bitsize == parts[0].system_bitsize))
            throw SignatureMismatch("composed encodings must share a system size");
}

}  // namespace

// ---------------------------------------------------------------------------
// basics

bool be_simulable(const BlockEncoding& be) {
    auto a = be.ancillas.as_integer();
    auto s = be.system_bitsize.as_integer();
    if (!a || !s || *a + *s > 12) return false;
    return be.alpha.is_const() && be.epsilon.is_const();
}

CMat be_matrix(const BlockEncoding& be) { return tensor_of(*be.inner); }

CMat be_extract(const BlockEncoding& be) {
    auto a = be.ancillas.as_integer();
    if (!a) throw TooLarge("ancilla count is not concrete");
    return block_extract(be_matrix(be), *a);
}

double be_defect(const BlockEncoding& be, const CMat& target) {
    double alpha = be.alpha.evaluate({}).as_double();
    return spectral_norm(target - alpha * be_extract(be));
}

BlockEncoding be_unitary(BloqPtr u) {
    if (!u) throw Error("null bloq");
    Signature sig = u->signature();
    for (const Register& r : sig.registers())
        if (r.side != Side::Thru)
            throw SignatureMismatch("only thru-register unitaries can be encoded directly");
    BlockEncoding be;
    be.system_bitsize = sig.total_qubits();
    be.inner = std::move(u);
    return be;
}

// ---------------------------------------------------------------------------
// dilation

CMat dilation_unitary(const CMat& block, long long ancilla_qubits, double clip) {
    if (ancilla_qubits < 1) throw BadAncillaCount("dilation needs at least one ancilla qubit");
    if (block.rows() != block.cols() || !is_power_of_two(block.rows()))
        throw TooLarge("block must be square with power-of-two dimension");
    long long n = block.rows();
    Eigen::JacobiSVD<CMat> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sv = svd.singularValues();
    for (long long i = 0; i < n; ++i) {
        if (sv(i) > 1.0 + clip)
            throw NormExceeded("block has singular value " + std::to_string(sv(i)) + " > 1");
        if (sv(i) > 1.0) sv(i) = 1.0;
    }
    Eigen::VectorXd cv = (1.0 - sv.array().square()).max(0.0).sqrt();
    CMat m = svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
    CMat c = svd.matrixU() * cv.asDiagonal() * svd.matrixU().adjoint();
    CMat d = svd.matrixV() * cv.asDiagonal() * svd.matrixV().adjoint();

    long long blocks = 1LL << ancilla_qubits;
    CMat out = CMat::Identity(blocks * n, blocks * n);
    out.block(0, 0, n, n) = m;
    out.block(0, n, n, n) = c;
    out.block(n, 0, n, n) = d;
    out.block(n, n, n, n) = -m.adjoint();
    return out;
}

// ---------------------------------------------------------------------------
// sparse-access encodings

namespace {

bool mask_allows(const RowColumnOracle& o, long long i, long long j) {
    switch (o.kind) {
        case RowColumnOracle::Kind::TopLeft:
            return i < o.param && j < o.param;
        case RowColumnOracle::Kind::SymmetricBanded:
            return std::llabs(i - j) <= o.param;
    }
    return false;
}

/// Inner unitary of a sparse-access encoding: a dilation carrying A/m.
class SparseMatrixBE final : public Bloq {
public:
    SparseMatrixBE(Eigen::MatrixXcd a, long long sparsity, long long sys_bits, long long val_bits,
                   bool explicit_entries)
        : a_(std::move(a)),
          m_(sparsity),
          s_(sys_bits),
          b_(val_bits),
          explicit_(explicit_entries) {}

    std::string name() const override { return "SparseMatrixBE"; }
    AttrMap attributes() const override {
        std::ostringstream os;
        os.precision(17);
        for (long long i = 0; i < a_.rows(); ++i)
            for (long long j = 0; j < a_.cols(); ++j)
                os << a_(i, j).real() << "," << a_(i, j).imag() << ";";
        return {{"entries", os.str()}, {"m", m_}, {"b", b_}};
    }
    Signature signature() const override {
        return Signature{Register("ancilla", QDType::uint(s_ + 1)),
                         Register("system", s_ == 1 ? QDType::bit() : QDType::uint(s_))};
    }
    std::optional<CMat> leaf_tensor() const override {
        if (2 * s_ + 1 > 14) return std::nullopt;
        return dilation_unitary(a_ / static_cast<double>(m_), s_ + 1);
    }
    std::optional<GateCounts> leaf_gate_counts() const override {
        // Estimate: a diffusion over the ancilla index, the entry load and
        // its uncompute, and the final swap/compare network.
        long long n = 1LL << s_;
        GateCounts g = GateCounts::cliffords(SymExpr::integer(2 * s_ + 2));
        g += GateCounts::toffolis(SymExpr::integer(2 * std::max(s_ - 1, 1LL)));
        if (explicit_) {
            g += GateCounts::toffolis(SymExpr::integer(2 * std::max(n * n - 2, 1LL)));
        } else {
            g += GateCounts::rotation(SymExpr::real(std::pow(2.0, -static_cast<double>(b_))),
                                      SymExpr::integer(2));
        }
        return g;
    }

private:
    Eigen::MatrixXcd a_;
    long long m_, s_, b_;
    bool explicit_;
};

}  // namespace

BlockEncoding be_sparse_matrix(const RowColumnOracle& rows, const RowColumnOracle& cols,
                               const EntryOracle& entry, long long sparsity, double epsilon) {
    long long dim = rows.dim;
    if (dim < 2 || !is_power_of_two(dim))
        throw OracleShapeMismatch("matrix dimension must be a power of two, at least 2");
    if (cols.dim != dim || entry.dim != dim)
        throw OracleShapeMismatch("row, column and entry oracles disagree on the dimension");
    if (entry.kind == EntryOracle::Kind::Explicit &&
        (entry.entries.rows() != dim || entry.entries.cols() != dim))
        throw OracleShapeMismatch("explicit entry array does not match the dimension");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");

    long long s = ceil_log2(dim);
    long long max_per_line = 0;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<long long> row_counts(dim, 0), col_counts(dim, 0);
    for (long long i = 0; i < dim; ++i)
        for (long long j = 0; j < dim; ++j) {
            if (!mask_allows(rows, i, j) || !mask_allows(cols, i, j)) continue;
            Complex v = entry.kind == EntryOracle::Kind::Uniform ? entry.value : entry.entries(i, j);
            if (std::abs(v) > 1.0 + 1e-12)
                throw NormExceeded("sparse-access entries must have magnitude at most 1");
            a(i, j) = v;
            ++row_counts[i];
            ++col_counts[j];
        }
    for (long long i = 0; i < dim; ++i)
        max_per_line = std::max({max_per_line, row_counts[i], col_counts[i]});
    if (sparsity < std::max(max_per_line, 1LL))
        throw OracleShapeMismatch("declared sparsity below the oracles' nonzeros per row/column");

    // Quantize entries to the grid the loading table holds; a step of
    // eps/sparsity keeps the matrix-level error within eps.
    long long b = std::max(
        1LL, static_cast<long long>(std::ceil(std::log2(static_cast<double>(sparsity) / epsilon))));
    double step = std::pow(2.0, -static_cast<double>(b));
    bool explicit_entries = entry.kind == EntryOracle::Kind::Explicit;
    if (explicit_entries)
        for (long long i = 0; i < dim; ++i)
            for (long long j = 0; j < dim; ++j)
                a(i, j) = Complex(std::round(a(i, j).real() / step) * step,
                                  std::round(a(i, j).imag() / step) * step);

    BlockEncoding be;
    be.inner = make_bloq<SparseMatrixBE>(std::move(a), sparsity, s, b, explicit_entries);
    be.alpha = SymExpr::integer(sparsity);
    be.ancillas = SymExpr::integer(s + 1);
    be.epsilon = SymExpr::real(epsilon);
    be.system_bitsize = SymExpr::integer(s);
    return be;
}

// ---------------------------------------------------------------------------
// composite encodings

CompositeBE::CompositeBE(BEKind kind, std::vector<BlockEncoding> parts,
                         std::vector<double> lambdas, double phi, SymExpr alpha, SymExpr ancillas,
                         SymExpr system_bitsize)
    : kind_(kind),
      parts_(std::move(parts)),
      lambdas_(std::move(lambdas)),
      phi_(phi),
      alpha_(std::move(alpha)),
      anc_(std::move(ancillas)),
      sys_(std::move(system_bitsize)) {}

std::string CompositeBE::name() const {
    switch (kind_) {
        case BEKind::TensorProduct: return "BETensorProduct";
        case BEKind::Product: return "BEProduct";
        case BEKind::Phase: return "BEPhase";
        case BEKind::LinearCombination: return "BELinearCombination";
        case BEKind::Chebyshev: return "BEChebyshev";
    }
    return "BE";
}

AttrMap CompositeBE::attributes() const {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < parts_.size(); ++i) {
        os << "{" << parts_[i].inner->key() << "|" << parts_[i].alpha.key() << "|"
           << parts_[i].ancillas.key() << "|" << parts_[i].epsilon.key() << "}";
        if (i < lambdas_.size()) os << "*" << lambdas_[i];
    }
    return {{"parts", os.str()}, {"phi", SymExpr::real(phi_)}};
}

Signature CompositeBE::signature() const {
    std::vector<Register> regs;
    if (!anc_.is_zero()) regs.emplace_back("ancilla", QDType::uint(anc_));
    regs.emplace_back("system", QDType::uint(sys_));
    return Signature{std::move(regs)};
}

std::optional<std::vector<Callee>> CompositeBE::callees() const {
    std::vector<Callee> cs;
    cs.reserve(parts_.size());
    for (const auto& p : parts_) cs.push_back({p.inner, SymExpr::integer(1)});
    return cs;
}

CMat CompositeBE::block() const {
    std::vector<CMat> blocks;
    blocks.reserve(parts_.size());
    for (const auto& p : parts_) blocks.push_back(be_extract(p));
    switch (kind_) {
        case BEKind::TensorProduct: {
            CMat m = blocks[0];
            for (size_t i = 1; i < blocks.size(); ++i) m = kron(m, blocks[i]);
            return m;
        }
        case BEKind::Product: {
            CMat m = blocks[0];
            for (size_t i = 1; i < blocks.size(); ++i) m = m * blocks[i];
            return m;
        }
        case BEKind::Phase:
            return std::exp(Complex(0.0, phi_)) * blocks[0];
        case BEKind::LinearCombination: {
            double alpha_out = alpha_.evaluate({}).as_double();
            CMat m = CMat::Zero(blocks[0].rows(), blocks[0].cols());
            for (size_t i = 0; i < blocks.size(); ++i) {
                double ai = parts_[i].alpha.evaluate({}).as_double();
                m += (lambdas_[i] * ai / alpha_out) * blocks[i];
            }
            return m;
        }
        case BEKind::Chebyshev:
            break;
    }
    throw Error("unsupported composite kind");
}

std::optional<CMat> CompositeBE::leaf_tensor() const {
    auto a = anc_.as_integer();
    auto s = sys_.as_integer();
    if (!a || !s || *a + *s > 12) return std::nullopt;
    for (const auto& p : parts_)
        if (!be_simulable(p)) return std::nullopt;
    CMat m = block();
    if (*a == 0) {
        // Zero ancillas force the block itself to be unitary.
        if (unitarity_defect(m) > 1e-9) return std::nullopt;
        return m;
    }
    return dilation_unitary(m, *a);
}

std::optional<GateCounts> CompositeBE::leaf_gate_counts() const { return std::nullopt; }

BlockEncoding be_tensor_product(std::vector<BlockEncoding> parts) {
    if (parts.empty()) throw EmptyParts("tensor product of zero encodings");
    BlockEncoding be;
    be.alpha = product_of(parts, get_alpha);
    be.ancillas = sum_of(parts, get_anc);
    be.epsilon = sum_of(parts, get_alpha_eps);
    be.system_bitsize = sum_of(parts, get_sys);
    be.inner = make_bloq<CompositeBE>(BEKind::TensorProduct, std::move(parts),
                                      std::vector<double>{}, 0.0, be.alpha, be.ancillas,
                                      be.system_bitsize);
    return be;
}

BlockEncoding be_product(std::vector<BlockEncoding> parts) {
    if (parts.empty()) throw EmptyParts("product of zero encodings");
    check_same_system(parts);
    long long n = static_cast<long long>(parts.size());
    BlockEncoding be;
    be.alpha = product_of(parts, get_alpha);
    be.ancillas = SymExpr::integer(n - 1) + max_of(parts, get_anc);
    be.epsilon = sum_of(parts, get_alpha_eps);
    be.system_bitsize = parts[0].system_bitsize;
    be.inner = make_bloq<CompositeBE>(BEKind::Product, std::move(parts), std::vector<double>{},
                                      0.0, be.alpha, be.ancillas, be.system_bitsize);
    return be;
}

BlockEncoding be_phase(BlockEncoding part, double phi) {
    BlockEncoding be;
    be.alpha = part.alpha;
    be.ancillas = part.ancillas;
    be.epsilon = part.epsilon;
    be.system_bitsize = part.system_bitsize;
    be.inner = make_bloq<CompositeBE>(BEKind::Phase, std::vector<BlockEncoding>{std::move(part)},
                                      std::vector<double>{}, phi, be.alpha, be.ancillas,
                                      be.system_bitsize);
    return be;
}

BlockEncoding be_linear_combination(std::vector<BlockEncoding> parts,
                                    std::vector<double> lambdas) {
    if (parts.empty()) throw EmptyParts("linear combination of zero encodings");
    if (parts.size() != lambdas.size())
        throw SignatureMismatch("one weight is required per encoding");
    check_same_system(parts);

    // Flatten nested linear combinations into a single weighted sum.
    std::vector<BlockEncoding> flat;
    std::vector<double> weights;
    for (size_t i = 0; i < parts.size(); ++i) {
        const auto* nested = dynamic_cast<const CompositeBE*>(parts[i].inner.get());
        if (nested && nested->kind() == BEKind::LinearCombination) {
            for (size_t j = 0; j < nested->parts().size(); ++j) {
                flat.push_back(nested->parts()[j]);
                weights.push_back(lambdas[i] * nested->lambdas()[j]);
            }
        } else {
            flat.push_back(parts[i]);
            weights.push_back(lambdas[i]);
        }
    }

    long long n = static_cast<long long>(flat.size());
    std::vector<SymExpr> alpha_terms;
    for (size_t i = 0; i < flat.size(); ++i)
        alpha_terms.push_back(weight_expr(weights[i]) * flat[i].alpha);
    SymExpr weight_sum;
    {
        std::vector<SymExpr> ws;
        for (double w : weights) ws.push_back(weight_expr(w));
        weight_sum = SymExpr::add(std::move(ws));
    }

    BlockEncoding be;
    be.alpha = SymExpr::add(std::move(alpha_terms));
    be.ancillas = SymExpr::ceil(SymExpr::log2(SymExpr::integer(n))) + max_of(flat, get_anc);
    be.epsilon = weight_sum * max_of(flat, get_eps);
    be.system_bitsize = flat[0].system_bitsize;
    be.inner = make_bloq<CompositeBE>(BEKind::LinearCombination, std::move(flat),
                                      std::move(weights), 0.0, be.alpha, be.ancillas,
                                      be.system_bitsize);
    return be;
}

BlockEncoding be_chebyshev(const BlockEncoding& part, long long j) {
    bool alpha_is_one = part.alpha.is_one() ||
                        (part.alpha.is_const() &&
                         std::abs(part.alpha.evaluate({}).as_double() - 1.0) < 1e-12);
    if (!alpha_is_one)
        throw AlphaNotOne("Chebyshev composition needs a normalization factor of 1");
    return chebyshev_via_walk(part, j);
}

// ---------------------------------------------------------------------------
// LCU of Pauli strings

namespace {

CMat pauli_matrix(char c) {
    CMat m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw BadParams(std::string("unknown Pauli letter: ") + c);
    }
    return m;
}

CMat pauli_string_matrix(const std::string& s) {
    CMat m = CMat::Identity(1, 1);
    for (char c : s) m = kron(m, pauli_matrix(c));
    return m;
}

class LCUPauliBE final : public Bloq {
public:
    LCUPauliBE(std::vector<PauliTerm> terms, long long sel_bits, long long sys_bits)
        : terms_(std::move(terms)), a_(sel_bits), s_(sys_bits) {}

    std::string name() const override { return "LCUPauli"; }
    AttrMap attributes() const override {
        std::ostringstream os;
        os.precision(17);
        for (const auto& t : terms_) os << t.coefficient << "*" << t.paulis << ";";
        return {{"terms", os.str()}};
    }
    Signature signature() const override {
        std::vector<Register> regs;
        if (a_ > 0) regs.emplace_back("ancilla", a_ == 1 ? QDType::bit() : QDType::uint(a_));
        regs.emplace_back("system", s_ == 1 ? QDType::bit() : QDType::uint(s_));
        return Signature{std::move(regs)};
    }
    std::optional<CMat> leaf_tensor() const override {
        if (a_ + s_ > 14) return std::nullopt;
        long long nsel = 1LL << a_;
        long long nsys = 1LL << s_;
        double alpha = 0.0;
        for (const auto& t : terms_) alpha += std::abs(t.coefficient);

        CMat sel = CMat::Identity(nsel * nsys, nsel * nsys);
        for (size_t i = 0; i < terms_.size(); ++i) {
            double sign = terms_[i].coefficient < 0.0 ? -1.0 : 1.0;
            sel.block(static_cast<long long>(i) * nsys, static_cast<long long>(i) * nsys, nsys,
                      nsys) = sign * pauli_string_matrix(terms_[i].paulis);
        }
        if (a_ == 0) return sel;

        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(nsel);
        for (size_t i = 0; i < terms_.size(); ++i)
            target(static_cast<long long>(i)) = std::sqrt(std::abs(terms_[i].coefficient) / alpha);
        Eigen::VectorXcd v = -target;
        v(0) += 1.0;
        CMat prep = CMat::Identity(nsel, nsel);
        double vn = v.squaredNorm();
        // Householder completion: hermitian, maps |0⟩ to the target
        // amplitudes, so prepare and unprepare coincide.
        if (vn > 1e-28) prep -= (2.0 / vn) * (v * v.adjoint());
        CMat prep_full = kron(prep, CMat::Identity(nsys, nsys));
        return prep_full * sel * prep_full;
    }
    std::optional<GateCounts> leaf_gate_counts() const override {
        // Select via unary iteration plus its uncompute; the prepare pair is
        // idealized as Clifford-dominated for this exact toy encoding.
        long long nsel = 1LL << a_;
        return GateCounts::toffolis(SymExpr::integer(2 * std::max(nsel - 2, 1LL))) +
               GateCounts::cliffords(SymExpr::integer(2 * nsel * std::max(s_, 1LL)));
    }

private:
    std::vector<PauliTerm> terms_;
    long long a_, s_;
};

}  // namespace

BlockEncoding be_lcu_paulis(const std::vector<PauliTerm>& terms) {
    if (terms.empty()) throw EmptyParts("linear combination of zero Pauli strings");
    size_t s = terms[0].paulis.size();
    if (s == 0) throw BadParams("Pauli strings must act on at least one qubit");
    double alpha = 0.0;
    for (const auto& t : terms) {
        if (t.paulis.size() != s)
            throw SignatureMismatch("all Pauli strings must have the same length");
        alpha += std::abs(t.coefficient);
    }
    if (alpha <= 0.0) throw BadParams("coefficients must not all vanish");
    long long a = ceil_log2(static_cast<long long>(terms.size()));

    BlockEncoding be;
    be.inner = make_bloq<LCUPauliBE>(terms, a, static_cast<long long>(s));
    be.alpha = weight_expr(alpha);
    be.ancillas = SymExpr::integer(a);
    be.epsilon = SymExpr::integer(0);
    be.system_bitsize = SymExpr::integer(static_cast<long long>(s));
    be.reflection_declared = true;
    return be;
}

// ---------------------------------------------------------------------------
// qubitization

ReflectAboutZero::ReflectAboutZero(SymExpr bits) : bits_(std::move(bits)) {
    auto n = bits_.as_integer();
    if (n && *n < 1) throw BadSize("reflection register needs at least one qubit");
}

Signature ReflectAboutZero::signature() const {
    return Signature{Register("reg", QDType::uint(bits_))};
}

std::optional<CMat> ReflectAboutZero::leaf_tensor() const {
    auto n = bits_.as_integer();
    if (!n || *n > 14) return std::nullopt;
    CMat m = -CMat::Identity(1LL << *n, 1LL << *n);
    m(0, 0) = 1.0;
    return m;
}

std::optional<GateCounts> ReflectAboutZero::leaf_gate_counts() const {
    auto n = bits_.as_integer();
    if (n && *n == 1) return GateCounts::cliffords(SymExpr::integer(1));
    return GateCounts::toffolis(SymExpr::max(bits_ - SymExpr::integer(1), SymExpr::integer(0))) +
           GateCounts::cliffords(SymExpr::integer(2) * bits_);
}

QubitizationWalk::QubitizationWalk(BlockEncoding be) : be_(std::move(be)) {}

AttrMap QubitizationWalk::attributes() const {
    return {{"inner", be_.inner->key()}, {"alpha", be_.alpha}, {"ancillas", be_.ancillas}};
}

Signature QubitizationWalk::signature() const { return be_.inner->signature(); }

std::optional<std::vector<Callee>> QubitizationWalk::callees() const {
    std::vector<Callee> cs{{be_.inner, SymExpr::integer(1)}};
    if (!be_.ancillas.is_zero())
        cs.push_back({make_bloq<ReflectAboutZero>(be_.ancillas), SymExpr::integer(1)});
    return cs;
}

std::optional<CMat> QubitizationWalk::leaf_tensor() const {
    if (!be_simulable(be_)) return std::nullopt;
    long long a = *be_.ancillas.as_integer();
    long long s = *be_.system_bitsize.as_integer();
    CMat b = be_matrix(be_);
    CMat refl = -CMat::Identity(1LL << a, 1LL << a);
    refl(0, 0) = 1.0;
    return kron(refl, CMat::Identity(1LL << s, 1LL << s)) * b;
}

BloqPtr qubitization_walk(const BlockEncoding& be) {
    if (be_simulable(be)) {
        CMat b = be_matrix(be);
        CMat sq = b * b - CMat::Identity(b.rows(), b.cols());
        if (sq.cwiseAbs().maxCoeff() > 1e-8)
            throw NotReflection("the encoding does not square to the identity");
    } else if (!be.reflection_declared) {
        throw NotReflection("cannot verify B^2 = I and no reflection was declared");
    }
    return make_bloq<QubitizationWalk>(be);
}

ChebyshevWalk::ChebyshevWalk(BlockEncoding be, long long j) : be_(std::move(be)), j_(j) {
    if (j_ < 0) throw BadParams("Chebyshev order must be non-negative");
    if (j_ > 0) qubitization_walk(be_);  // validates the reflection property
}

AttrMap ChebyshevWalk::attributes() const {
    return {{"inner", be_.inner->key()}, {"j", j_}};
}

Signature ChebyshevWalk::signature() const { return be_.inner->signature(); }

std::optional<std::vector<Callee>> ChebyshevWalk::callees() const {
    if (j_ == 0) return std::nullopt;
    return std::vector<Callee>{{qubitization_walk(be_), SymExpr::integer(j_)}};
}

std::optional<GateCounts> ChebyshevWalk::leaf_gate_counts() const {
    if (j_ == 0) return GateCounts::zero();
    return std::nullopt;
}

std::optional<CMat> ChebyshevWalk::leaf_tensor() const {
    if (!be_simulable(be_)) return std::nullopt;
    CMat w = *QubitizationWalk(be_).leaf_tensor();
    CMat out = CMat::Identity(w.rows(), w.cols());
    for (long long i = 0; i < j_; ++i) out = out * w;
    return out;
}

BlockEncoding chebyshev_via_walk(const BlockEncoding& be, long long j) {
    BlockEncoding out;
    out.ancillas = be.ancillas;
    out.epsilon = be.epsilon;
    out.system_bitsize = be.system_bitsize;
    out.alpha = SymExpr::integer(1);
    out.inner = make_bloq<ChebyshevWalk>(be, j);
    return out;
}

}  // namespace qre
