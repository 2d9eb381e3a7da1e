#include "depthlab/class_function.hpp"

#include "depthlab/errors.hpp"

namespace depthlab {

ClassFunction ClassFunction::integer(permgroup::GroupPtr group, std::vector<std::int64_t> values)
{
    if (values.size() != group->num_classes())
        throw IntegrityError("ClassFunction: value count does not match class count");
    ClassFunction f;
    f.group_ = std::move(group);
    f.kind_ = Kind::Integer;
    f.integers_ = std::move(values);
    return f;
}

ClassFunction ClassFunction::modular(permgroup::GroupPtr group, std::uint64_t prime,
                                     std::vector<std::uint64_t> residues)
{
    if (residues.size() != group->num_classes())
        throw IntegrityError("ClassFunction: value count does not match class count");
    for (auto r : residues)
        if (r >= prime)
            throw IntegrityError("ClassFunction: residue out of range");
    ClassFunction f;
    f.group_ = std::move(group);
    f.kind_ = Kind::Modular;
    f.residues_ = std::move(residues);
    f.prime_ = prime;
    return f;
}

const std::vector<std::int64_t>& ClassFunction::integers() const
{
    if (kind_ != Kind::Integer)
        throw PreconditionError("ClassFunction: exact values requested from a modular class function");
    return integers_;
}

std::uint64_t ClassFunction::residue(std::size_t c, const PrimeField& F) const
{
    if (kind_ == Kind::Integer)
        return F.reduce(integers_.at(c));
    if (prime_ != F.prime())
        throw PreconditionError("ClassFunction: modular values live over a different prime");
    return residues_.at(c);
}

std::vector<std::uint64_t> ClassFunction::residues(const PrimeField& F) const
{
    std::vector<std::uint64_t> out(size());
    for (std::size_t c = 0; c < out.size(); ++c)
        out[c] = residue(c, F);
    return out;
}

}  // namespace depthlab
