#include "tdk/abelian.hpp"

#include <sstream>
#include <stdexcept>

#include "tdk/snf.hpp"

namespace tdk {

// ---------------------------------------------------------------------------
// FgAbelianGroup
// ---------------------------------------------------------------------------

FgAbelianGroup::FgAbelianGroup(std::size_t rank, std::vector<BigInt> torsion)
    : rank_(rank), torsion_(std::move(torsion))
{
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2)
            throw std::invalid_argument("invariant factors must be at least 2");
        if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

IntVector FgAbelianGroup::normalize(IntVector coords) const
{
    if (coords.size() != generator_count())
        throw std::invalid_argument("coordinate vector has wrong length for " + to_string());
    for (std::size_t i = 0; i < torsion_.size(); ++i)
        mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(), torsion_[i].get_mpz_t());
    return coords;
}

bool FgAbelianGroup::is_zero_element(const IntVector& coords) const
{
    return tdk::is_zero(normalize(coords));
}

IntVector FgAbelianGroup::add(const IntVector& a, const IntVector& b) const
{
    return normalize(tdk::add(a, b));
}

IntVector FgAbelianGroup::negate(const IntVector& a) const { return normalize(tdk::negate(a)); }

std::vector<BigInt> FgAbelianGroup::moduli() const
{
    std::vector<BigInt> m = torsion_;
    m.resize(generator_count(), BigInt(0));
    return m;
}

bool FgAbelianGroup::operator==(const FgAbelianGroup& other) const
{
    return rank_ == other.rank_ && torsion_ == other.torsion_;
}

std::string FgAbelianGroup::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
        os << "Z";
        if (rank_ > 1)
            os << '^' << rank_;
        first = false;
    }
    for (const auto& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Subquotient
// ---------------------------------------------------------------------------

Subquotient Subquotient::make(std::size_t ambient_dim, const IntMatrix& z_gens, const IntMatrix& b_gens)
{
    if (z_gens.rows() != ambient_dim || b_gens.rows() != ambient_dim)
        throw std::invalid_argument("subquotient generators do not live in the ambient space");
    Subquotient sq;
    sq.ambient_dim_ = ambient_dim;
    sq.b_gens_ = b_gens;

    SmithForm zf = smith_normal_form(z_gens, {true, false});
    const std::size_t m = zf.rank;
    sq.z_left_ = std::move(zf.U);
    sq.z_basis_ = IntMatrix(ambient_dim, m);
    for (std::size_t i = 0; i < m; ++i) {
        sq.z_diag_.push_back(zf.D(i, i));
        for (std::size_t r = 0; r < ambient_dim; ++r)
            sq.z_basis_(r, i) = zf.U_inv(r, i) * zf.D(i, i);
    }

    sq.relations_ = IntMatrix(m, b_gens.cols());
    for (std::size_t j = 0; j < b_gens.cols(); ++j) {
        IntVector col = b_gens.column(j);
        auto c = sq.lattice_coords(col);
        if (!c)
            throw ContainmentError("denominator generator " + std::to_string(j) +
                                       " is not contained in the numerator lattice",
                                   col);
        sq.relations_.set_column(j, *c);
    }

    SmithForm qf = smith_normal_form(sq.relations_, {true, false});
    sq.q_left_ = std::move(qf.U);
    std::vector<BigInt> torsion;
    std::size_t free_rank = 0;
    std::vector<std::size_t> torsion_idx, free_idx;
    for (std::size_t i = 0; i < m; ++i) {
        if (i < qf.rank) {
            if (qf.D(i, i) != 1) {
                torsion.push_back(qf.D(i, i));
                torsion_idx.push_back(i);
            }
        } else {
            ++free_rank;
            free_idx.push_back(i);
        }
    }
    sq.group_ = FgAbelianGroup(free_rank, torsion);
    sq.kept_ = torsion_idx;
    sq.kept_.insert(sq.kept_.end(), free_idx.begin(), free_idx.end());
    sq.kept_moduli_ = sq.group_.moduli();

    sq.section_ = IntMatrix(ambient_dim, sq.kept_.size());
    for (std::size_t g = 0; g < sq.kept_.size(); ++g) {
        IntVector coords = qf.U_inv.column(sq.kept_[g]);
        sq.section_.set_column(g, sq.z_basis_ * coords);
    }
    return sq;
}

Subquotient Subquotient::cokernel(const IntMatrix& relations)
{
    return make(relations.rows(), IntMatrix::identity(relations.rows()), relations);
}

Subquotient Subquotient::trivial(std::size_t ambient_dim)
{
    return make(ambient_dim, IntMatrix(ambient_dim, 0), IntMatrix(ambient_dim, 0));
}

std::optional<IntVector> Subquotient::lattice_coords(const IntVector& x) const
{
    if (x.size() != ambient_dim_)
        throw std::invalid_argument("vector does not live in the ambient space of the subquotient");
    IntVector y = z_left_ * x;
    IntVector c(z_diag_.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < z_diag_.size()) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), z_diag_[i].get_mpz_t()))
                return std::nullopt;
            mpz_divexact(c[i].get_mpz_t(), y[i].get_mpz_t(), z_diag_[i].get_mpz_t());
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return c;
}

std::optional<IntVector> Subquotient::reduce(const IntVector& x) const
{
    auto c = lattice_coords(x);
    if (!c)
        return std::nullopt;
    IntVector y = q_left_ * *c;
    IntVector out(kept_.size());
    for (std::size_t g = 0; g < kept_.size(); ++g)
        out[g] = y[kept_[g]];
    return group_.normalize(std::move(out));
}

IntVector Subquotient::reduce_or_throw(const IntVector& x) const
{
    auto r = reduce(x);
    if (!r)
        throw std::domain_error("element " + to_string(x) + " is not a cycle of the subquotient");
    return *r;
}

bool Subquotient::is_zero_class(const IntVector& x) const
{
    auto r = reduce(x);
    return r && tdk::is_zero(*r);
}

IntVector Subquotient::representative(const IntVector& coords) const
{
    return section_ * coords;
}

// ---------------------------------------------------------------------------
// GroupHom
// ---------------------------------------------------------------------------

GroupHom::GroupHom(Subquotient source, Subquotient target, IntMatrix ambient_matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(ambient_matrix))
{
    if (matrix_.rows() != target_.ambient_dim() || matrix_.cols() != source_.ambient_dim())
        throw std::invalid_argument("homomorphism matrix has the wrong shape");
    for (std::size_t j = 0; j < source_.cycle_basis().cols(); ++j)
        if (!target_.contains(matrix_ * source_.cycle_basis().column(j)))
            throw std::domain_error("matrix does not map cycles to cycles");
    for (std::size_t j = 0; j < source_.boundary_generators().cols(); ++j)
        if (!target_.is_zero_class(matrix_ * source_.boundary_generators().column(j)))
            throw std::domain_error("matrix does not map boundaries to boundaries");
    const auto& sec = source_.section();
    nf_matrix_ = IntMatrix(target_.group().generator_count(), sec.cols());
    for (std::size_t j = 0; j < sec.cols(); ++j)
        nf_matrix_.set_column(j, target_.reduce_or_throw(matrix_ * sec.column(j)));
}

IntVector GroupHom::apply(const IntVector& source_coords) const
{
    return target_.group().normalize(nf_matrix_ * source_coords);
}

Subquotient GroupHom::kernel() const
{
    const std::size_t gs = source_.group().generator_count();
    const auto tmod = target_.group().moduli();
    std::vector<IntVector> rel_cols;
    for (std::size_t i = 0; i < tmod.size(); ++i)
        if (tmod[i] != 0) {
            IntVector e = zero_vector(tmod.size());
            e[i] = tmod[i];
            rel_cols.push_back(e);
        }
    IntMatrix stacked = nf_matrix_.hstack(IntMatrix::from_columns(tmod.size(), rel_cols));
    IntMatrix k = kernel_basis(stacked);
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < gs; ++i)
        first.push_back(i);
    IntMatrix kproj = k.select_rows(first);
    IntMatrix z = (source_.section() * kproj).hstack(source_.boundary_generators());
    return Subquotient::make(source_.ambient_dim(), z, source_.boundary_generators());
}

Subquotient GroupHom::image() const
{
    IntMatrix z = (matrix_ * source_.cycle_basis()).hstack(target_.boundary_generators());
    return Subquotient::make(target_.ambient_dim(), z, target_.boundary_generators());
}

bool GroupHom::is_zero() const { return nf_matrix_.is_zero() || image().group().is_trivial(); }

bool GroupHom::is_surjective() const
{
    return quotient_of_subgroups(target_, image()).group().is_trivial();
}

Subquotient quotient_of_subgroups(const Subquotient& numerator, const Subquotient& denominator)
{
    if (numerator.ambient_dim() != denominator.ambient_dim())
        throw std::invalid_argument("subgroups live in different ambient spaces");
    IntMatrix z = numerator.cycle_basis().hstack(numerator.boundary_generators());
    IntMatrix b = denominator.cycle_basis().hstack(denominator.boundary_generators());
    return Subquotient::make(numerator.ambient_dim(), z, b);
}

bool is_exact_at(const GroupHom& f, const GroupHom& g)
{
    if (f.target().ambient_dim() != g.source().ambient_dim())
        throw std::invalid_argument("homomorphisms are not composable");
    try {
        return quotient_of_subgroups(g.kernel(), f.image()).group().is_trivial();
    } catch (const ContainmentError&) {
        return false;  // g∘f ≠ 0
    }
}

Subquotient cokernel(const IntMatrix& m) { return Subquotient::cokernel(m); }

KernelGroup kernel(const IntMatrix& m)
{
    KernelGroup k;
    k.inclusion = kernel_basis(m);
    k.group = FgAbelianGroup::free(k.inclusion.cols());
    return k;
}

}  // namespace tdk
