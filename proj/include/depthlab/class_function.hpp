#pragma once

#include <cstdint>
#include <vector>

#include "depthlab/modular.hpp"
#include "depthlab/permgroup.hpp"

namespace depthlab {

/// Values of a class function indexed by conjugacy class. Integer-valued functions
/// (permutation characters and their products) keep exact values; modular ones keep
/// residues modulo the prime of the character table they came from.
class ClassFunction {
public:
    enum class Kind { Integer, Modular };

    static ClassFunction integer(permgroup::GroupPtr group, std::vector<std::int64_t> values);
    static ClassFunction modular(permgroup::GroupPtr group, std::uint64_t prime,
                                 std::vector<std::uint64_t> residues);

    const permgroup::GroupPtr& group() const { return group_; }
    Kind kind() const { return kind_; }
    bool is_integer() const { return kind_ == Kind::Integer; }
    std::size_t size() const { return kind_ == Kind::Integer ? integers_.size() : residues_.size(); }

    /// Exact values; throws PreconditionError for modular functions.
    const std::vector<std::int64_t>& integers() const;
    std::int64_t integer_value(std::size_t c) const { return integers().at(c); }

    /// 0 for integer-valued functions.
    std::uint64_t prime() const { return prime_; }
    /// Residue in F; modular functions must already live over F.
    std::uint64_t residue(std::size_t c, const PrimeField& F) const;
    ModularScalar value(std::size_t c, const PrimeField& F) const { return {residue(c, F), F.prime()}; }
    std::vector<std::uint64_t> residues(const PrimeField& F) const;

private:
    permgroup::GroupPtr group_;
    Kind kind_ = Kind::Integer;
    std::vector<std::int64_t> integers_;
    std::vector<std::uint64_t> residues_;
    std::uint64_t prime_ = 0;
};

}  // namespace depthlab
