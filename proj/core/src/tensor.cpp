#include "qre/tensor.hpp"

#include <complex>

#include "qre/classical.hpp"

namespace qre {

namespace {

struct Slot {
    Port src;
    long long width;
};

long long qubits_of(const Register& r, long long* per_element = nullptr) {
    auto nb = r.dtype.concrete_bits();
    if (!nb) throw MissingTensor("tensor simulation needs concrete register widths");
    if (per_element) *per_element = *nb;
    return *nb * r.num_elements();
}

/// Reorder live slots so that `front` (slot indices) come first, in order.
/// Rewrites M's row index accordingly and returns the new slot list.
std::vector<Slot> hoist(std::vector<Slot>& slots, const std::vector<size_t>& front, CMat& m) {
    std::vector<bool> picked(slots.size(), false);
    std::vector<size_t> order = front;
    for (size_t i : front) picked[i] = true;
    for (size_t i = 0; i < slots.size(); ++i)
        if (!picked[i]) order.push_back(i);

    // qubit offsets in the old order (MSB first)
    long long total = 0;
    std::vector<long long> offset(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
        offset[i] = total;
        total += slots[i].width;
    }
    // old bit position for each new bit position
    std::vector<long long> oldpos;
    oldpos.reserve(static_cast<size_t>(total));
    for (size_t i : order)
        for (long long b = 0; b < slots[i].width; ++b) oldpos.push_back(offset[i] + b);

    bool identity = true;
    for (size_t j = 0; j < oldpos.size(); ++j)
        if (oldpos[j] != static_cast<long long>(j)) identity = false;
    if (!identity) {
        CMat out(m.rows(), m.cols());
        long long dim = 1LL << total;
        for (long long row = 0; row < dim; ++row) {
            long long newrow = 0;
            for (size_t j = 0; j < oldpos.size(); ++j) {
                long long bit = (row >> (total - 1 - oldpos[j])) & 1;
                newrow |= bit << (total - 1 - static_cast<long long>(j));
            }
            out.row(newrow) = m.row(row);
        }
        m = std::move(out);
    }
    std::vector<Slot> reordered;
    reordered.reserve(slots.size());
    for (size_t i : order) reordered.push_back(slots[i]);
    return reordered;
}

/// m := (u ⊗ I_rest) · m, where u acts on the leading `l` qubits of the row
/// index and has shape (2^r, 2^l).
void apply_front(const CMat& u, long long l, long long rest_qubits, CMat& m) {
    long long rest = 1LL << rest_qubits;
    long long lin = u.cols();   // 2^l
    long long lout = u.rows();  // 2^r
    (void)l;
    CMat out(lout * rest, m.cols());
    for (long long t = 0; t < rest; ++t) {
        CMat gathered(lin, m.cols());
        for (long long s = 0; s < lin; ++s) gathered.row(s) = m.row(s * rest + t);
        CMat prod = u * gathered;
        for (long long i = 0; i < lout; ++i) out.row(i * rest + t) = prod.row(i);
    }
    m = std::move(out);
}

CMat contract(const Bloq& b, const TensorOptions& opts);

CMat instance_tensor(const Bloq& b, const TensorOptions& opts) {
    if (auto t = b.leaf_tensor()) return *t;
    if (b.has_decomposition()) return contract(b, opts);
    throw MissingTensor(b.name() + " defines neither a tensor nor a decomposition");
}

CMat contract(const Bloq& b, const TensorOptions& opts) {
    ComputeGraph g = decompose(b);
    const Signature& sig = g.signature();

    std::vector<Slot> slots;
    long long live = 0;
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_left()) continue;
        long long w = 0;
        qubits_of(r, &w);
        for (long long i = 0; i < r.num_elements(); ++i) {
            slots.push_back(Slot{Port{Port::kLeft, static_cast<int>(ri), static_cast<int>(i)}, w});
            live += w;
        }
    }
    if (live > opts.max_qubits)
        throw TooLarge(b.name() + ": " + std::to_string(live) + " input qubits exceed the cap");
    long long left_dim = 1LL << live;
    CMat m = CMat::Identity(left_dim, left_dim);

    for (int ni : g.topo_order()) {
        const BloqPtr& inst = g.nodes()[static_cast<size_t>(ni)];
        Signature isig = inst->signature();
        // instance input ports in signature flatten order
        std::vector<size_t> front;
        long long l = 0;
        for (size_t ri = 0; ri < isig.size(); ++ri) {
            const Register& r = isig[ri];
            if (!r.on_left()) continue;
            l += qubits_of(r);
            for (long long i = 0; i < r.num_elements(); ++i) {
                const Wire& w =
                    g.wire_into(Port{ni, static_cast<int>(ri), static_cast<int>(i)});
                bool found = false;
                for (size_t si = 0; si < slots.size(); ++si)
                    if (slots[si].src == w.src) {
                        front.push_back(si);
                        found = true;
                        break;
                    }
                if (!found) throw Error("internal: live wire not found during contraction");
            }
        }
        slots = hoist(slots, front, m);
        long long rest = live - l;
        CMat u = instance_tensor(*inst, opts);
        long long r_qubits = 0;
        for (size_t ri = 0; ri < isig.size(); ++ri)
            if (isig[ri].on_right()) r_qubits += qubits_of(isig[ri]);
        if (u.rows() != (1LL << r_qubits) || u.cols() != (1LL << l))
            throw MissingTensor(inst->name() + ": tensor shape disagrees with signature");
        live = rest + r_qubits;
        if (live > opts.max_qubits)
            throw TooLarge(b.name() + ": " + std::to_string(live) +
                           " live qubits exceed the cap");
        apply_front(u, l, rest, m);
        // new slot list: instance outputs first, then the untouched rest
        std::vector<Slot> next;
        for (size_t ri = 0; ri < isig.size(); ++ri) {
            const Register& r = isig[ri];
            if (!r.on_right()) continue;
            long long w = 0;
            qubits_of(r, &w);
            for (long long i = 0; i < r.num_elements(); ++i)
                next.push_back(Slot{Port{ni, static_cast<int>(ri), static_cast<int>(i)}, w});
        }
        for (size_t si = front.size(); si < slots.size(); ++si) next.push_back(slots[si]);
        slots = std::move(next);
    }

    // order remaining slots to match the right boundary
    std::vector<size_t> order;
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_right()) continue;
        for (long long i = 0; i < r.num_elements(); ++i) {
            const Wire& w =
                g.wire_into(Port{Port::kRight, static_cast<int>(ri), static_cast<int>(i)});
            bool found = false;
            for (size_t si = 0; si < slots.size(); ++si)
                if (slots[si].src == w.src) {
                    order.push_back(si);
                    found = true;
                    break;
                }
            if (!found) throw Error("internal: output wire not found after contraction");
        }
    }
    if (order.size() != slots.size())
        throw Error("internal: leftover live wires after contraction");
    slots = hoist(slots, order, m);
    return m;
}

}  // namespace

CMat tensor_of(const Bloq& b, const TensorOptions& opts) {
    if (auto t = b.leaf_tensor()) return *t;
    if (!b.has_decomposition())
        throw MissingTensor(b.name() + " defines neither a tensor nor a decomposition");
    return contract(b, opts);
}

CMat classical_tensor(const Bloq& b, int max_qubits) {
    Signature sig = b.signature();
    long long lq = 0, rq = 0;
    for (const auto& r : sig.registers()) {
        long long w = 0;
        qubits_of(r, &w);
        if (r.on_left()) lq += w * r.num_elements();
        if (r.on_right()) rq += w * r.num_elements();
    }
    if (lq > max_qubits || rq > max_qubits)
        throw TooLarge(b.name() + ": too wide for a dense classical tensor");
    CMat m = CMat::Zero(1LL << rq, 1LL << lq);
    for (long long x = 0; x < (1LL << lq); ++x) {
        ClassicalMap ins;
        long long shift = lq;
        for (const auto& r : sig.registers()) {
            if (!r.on_left()) continue;
            long long w = *r.dtype.concrete_bits();
            std::vector<long long> vs;
            for (long long i = 0; i < r.num_elements(); ++i) {
                shift -= w;
                std::vector<int> bits;
                for (long long j = w - 1; j >= 0; --j)
                    bits.push_back(static_cast<int>((x >> (shift + j)) & 1));
                vs.push_back(ClassicalValue::from_bits(r.dtype, bits).scalar());
            }
            ins.emplace(r.name, ClassicalValue::of_array(r.dtype, std::move(vs)));
        }
        ClassicalMap outs = call_classically(b, ins);
        long long y = 0;
        for (const auto& r : sig.registers()) {
            if (!r.on_right()) continue;
            const ClassicalValue& v = outs.at(r.name);
            for (long long i = 0; i < r.num_elements(); ++i) {
                ClassicalValue elem = ClassicalValue::of(r.dtype, v[static_cast<size_t>(i)]);
                for (int bit : elem.to_bits()) y = (y << 1) | bit;
            }
        }
        m(y, x) = 1.0;
    }
    return m;
}

CMat block_extract(const CMat& t, long long ancilla_qubits) {
    if (t.rows() != t.cols()) throw BadAncillaCount("block extraction needs a square tensor");
    long long dim = t.rows();
    long long adim = 1LL << ancilla_qubits;
    if (ancilla_qubits < 0 || adim > dim)
        throw BadAncillaCount("ancilla count exceeds tensor width");
    long long sub = dim / adim;
    return t.topLeftCorner(sub, sub);
}

double max_abs_diff_up_to_phase(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("shape mismatch in tensor comparison");
    std::complex<double> inner = (a.conjugate().cwiseProduct(b)).sum();
    std::complex<double> phase =
        std::abs(inner) < 1e-300 ? std::complex<double>(1.0, 0.0) : inner / std::abs(inner);
    return ((a * phase) - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMat& u) {
    CMat d = u.adjoint() * u - CMat::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

double spectral_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

}  // namespace qre
