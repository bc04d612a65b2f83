#pragma once

#include <string>
#include <vector>

#include "qre/dtypes.hpp"

namespace qre {

enum class Side { Thru, LeftOnly, RightOnly };

/// One named, typed register of a bloq's interface. `shape` describes an
/// array of identical registers; empty shape means a single scalar register.
struct Register {
    std::string name;
    QDType dtype;
    std::vector<long long> shape;
    Side side = Side::Thru;

    Register(std::string name_, QDType dtype_, std::vector<long long> shape_ = {},
             Side side_ = Side::Thru)
        : name(std::move(name_)), dtype(std::move(dtype_)), shape(std::move(shape_)), side(side_) {
        if (name.empty()) throw Error("register name must be nonempty");
        for (long long s : shape)
            if (s < 0) throw Error("register shape entries must be non-negative");
    }

    long long num_elements() const {
        long long n = 1;
        for (long long s : shape) n *= s;
        return n;
    }
    SymExpr total_qubits() const {
        return SymExpr::integer(num_elements()) * dtype.num_qubits();
    }
    bool on_left() const { return side != Side::RightOnly; }
    bool on_right() const { return side != Side::LeftOnly; }
    std::string key() const;
};

/// Ordered register list forming a bloq interface.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<Register> regs) : regs_(regs) { validate(); }
    explicit Signature(std::vector<Register> regs) : regs_(std::move(regs)) { validate(); }

    const std::vector<Register>& registers() const { return regs_; }
    size_t size() const { return regs_.size(); }
    const Register& operator[](size_t i) const { return regs_[i]; }

    /// Index of the named register; throws if absent.
    size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;

    SymExpr total_left_qubits() const;
    SymExpr total_right_qubits() const;
    /// Max of left/right totals; the in-flight width of a Thru-only bloq.
    SymExpr total_qubits() const;

    std::string key() const;

private:
    void validate() const;
    std::vector<Register> regs_;
};

}  // namespace qre
