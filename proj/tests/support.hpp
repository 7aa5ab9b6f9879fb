#pragma once

#include <string>

#include "oracles.hpp"
#include "tdk/corpus.hpp"
#include "tdk/io.hpp"

namespace support {

inline oracle::Mat to_oracle(const tdk::IntMatrix& m)
{
    oracle::Mat out(m.rows(), std::vector<oracle::Z>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = m(r, c);
    return out;
}

inline std::string fixture(const std::string& name) { return *tdk::find_fixture(name); }

inline tdk::Pair fixture_pair(const std::string& name) { return tdk::parse_pair(fixture(name)); }

/**
 * H^k of a cochain complex with differentials d_{k-1}, d_k computed by the
 * oracles: rank from ranks over Q, torsion from the invariant factors of
 * d_{k-1} (determinantal divisors for small matrices, the textbook
 * elimination otherwise). Returns (rank, torsion factors > 1).
 */
struct OracleGroup {
    std::size_t rank = 0;
    std::vector<oracle::Z> torsion;
};

inline OracleGroup oracle_cohomology(std::size_t dim, const tdk::IntMatrix& d_in, const tdk::IntMatrix& d_out)
{
    OracleGroup g;
    std::size_t r_in = d_in.rows() && d_in.cols() ? oracle::rank_q(to_oracle(d_in)) : 0;
    std::size_t r_out = d_out.rows() && d_out.cols() ? oracle::rank_q(to_oracle(d_out)) : 0;
    g.rank = dim - r_in - r_out;
    if (d_in.rows() && d_in.cols())
        for (const auto& f : d_in.rows() <= 6 && d_in.cols() <= 6 ? oracle::invariant_factors(to_oracle(d_in))
                                                                   : oracle::textbook_smith(to_oracle(d_in)))
            if (f != 1)
                g.torsion.push_back(f);
    return g;
}

inline bool same(const tdk::FgAbelianGroup& a, const OracleGroup& b)
{
    if (a.rank() != b.rank || a.torsion().size() != b.torsion.size())
        return false;
    for (std::size_t i = 0; i < b.torsion.size(); ++i)
        if (a.torsion()[i] != b.torsion[i])
            return false;
    return true;
}

}  // namespace support
