#pragma once

// Contraction of tensor networks whose indices all have dimension 2.
// Variables are summed out greedily, always picking the one whose
// elimination creates the smallest intermediate factor.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zxg/error.hpp"

namespace zxg {

using cplx = std::complex<double>;

/// A dense factor. Bit p of an entry index is the value of vars[p].
struct Factor {
    std::vector<int> vars;
    std::vector<cplx> data;
};

class TensorNetwork {
public:
    int new_var() { return next_var_++; }
    int num_vars() const { return next_var_; }

    void add_factor(std::vector<int> vars, std::vector<cplx> data) {
        if (data.size() != (std::size_t{1} << vars.size())) throw InvariantError("factor size mismatch");
        factors_.push_back(dedupe({std::move(vars), std::move(data)}));
    }
    /// Forces two variables to be equal.
    void add_delta(int a, int b) {
        if (a == b) return;
        add_factor({a, b}, {1, 0, 0, 1});
    }
    void add_unary(int a, cplx v0, cplx v1) { add_factor({a}, {v0, v1}); }
    /// m[row][col] with row variable `r` and column variable `c`.
    void add_matrix(int r, int c, cplx m00, cplx m01, cplx m10, cplx m11) {
        add_factor({r, c}, {m00, m10, m01, m11});
    }

    const std::vector<Factor>& factors() const { return factors_; }

    /// Contracts every variable not listed in `open`; returns the tensor over
    /// the open positions (bit p of the result index = value at open[p]).
    /// A variable may appear at several open positions. The result is only
    /// defined up to a positive scalar.
    std::vector<cplx> contract(const std::vector<int>& open, std::size_t max_factor_vars = 26) const {
        std::vector<Factor> fs = factors_;
        std::set<int> open_set(open.begin(), open.end());
        for (;;) {
            // Pick the cheapest variable to eliminate.
            std::map<int, std::set<int>> scope;
            for (const auto& f : fs)
                for (int v : f.vars)
                    if (!open_set.count(v)) {
                        auto& s = scope[v];
                        s.insert(f.vars.begin(), f.vars.end());
                    }
            if (scope.empty()) break;
            int best = -1;
            std::size_t best_size = SIZE_MAX;
            for (const auto& [v, s] : scope) {
                if (s.size() < best_size) {
                    best = v;
                    best_size = s.size();
                }
            }
            if (best_size - 1 > max_factor_vars)
                throw SizeLimitError("contraction needs a factor over " + std::to_string(best_size - 1) + " indices");
            std::vector<Factor> take, keep;
            for (auto& f : fs) {
                if (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end()) take.push_back(std::move(f));
                else keep.push_back(std::move(f));
            }
            keep.push_back(eliminate(take, best));
            fs = std::move(keep);
        }
        // Multiply what is left; every remaining variable is open.
        std::vector<int> rest;
        for (const auto& f : fs)
            for (int v : f.vars)
                if (std::find(rest.begin(), rest.end(), v) == rest.end()) rest.push_back(v);
        if (rest.size() > max_factor_vars) throw SizeLimitError("open tensor too large");
        const Factor joint = multiply(fs, rest, -1);

        const std::size_t n = open.size();
        if (n > 30) throw SizeLimitError("too many open indices");
        std::vector<cplx> out(std::size_t{1} << n, cplx{0});
        // Positions sharing a variable must carry equal bits; `same` lists
        // (first position, other position) pairs.
        std::vector<std::pair<std::size_t, std::size_t>> same;
        std::vector<std::size_t> shift(rest.size(), 0);
        for (std::size_t r = 0; r < rest.size(); ++r) {
            bool found = false;
            for (std::size_t p = 0; p < n; ++p) {
                if (open[p] != rest[r]) continue;
                if (!found) shift[r] = p;
                found = true;
            }
        }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < p; ++q)
                if (open[q] == open[p]) {
                    same.emplace_back(q, p);
                    break;
                }
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            bool consistent = true;
            for (const auto& [a, b] : same)
                if (((idx >> a) ^ (idx >> b)) & 1u) {
                    consistent = false;
                    break;
                }
            if (!consistent) continue;
            std::size_t j = 0;
            for (std::size_t r = 0; r < rest.size(); ++r) j |= ((idx >> shift[r]) & 1u) << r;
            out[idx] = joint.data[j];
        }
        return out;
    }

private:
    static Factor dedupe(Factor f) {
        std::vector<int> uniq;
        for (int v : f.vars)
            if (std::find(uniq.begin(), uniq.end(), v) == uniq.end()) uniq.push_back(v);
        if (uniq.size() == f.vars.size()) return f;
        Factor g{uniq, std::vector<cplx>(std::size_t{1} << uniq.size())};
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            std::size_t j = 0;
            for (std::size_t p = 0; p < f.vars.size(); ++p) {
                const auto q = std::find(uniq.begin(), uniq.end(), f.vars[p]) - uniq.begin();
                j |= ((i >> q) & 1u) << p;
            }
            g.data[i] = f.data[j];
        }
        return g;
    }

    /// Product of `fs` over `vars` (which must cover all their variables),
    /// summing out `sum_var` if it is not -1. Result rescaled to max |entry| = 1.
    static Factor multiply(const std::vector<Factor>& fs, const std::vector<int>& vars, int sum_var) {
        std::vector<int> out_vars;
        for (int v : vars)
            if (v != sum_var) out_vars.push_back(v);
        // Bit positions of every factor variable inside the full assignment
        // (out_vars first, then sum_var as the top bit).
        std::vector<int> full = out_vars;
        if (sum_var != -1) full.push_back(sum_var);
        std::vector<std::vector<int>> where(fs.size());
        for (std::size_t f = 0; f < fs.size(); ++f)
            for (int v : fs[f].vars)
                where[f].push_back(static_cast<int>(std::find(full.begin(), full.end(), v) - full.begin()));
        const std::size_t n_out = std::size_t{1} << out_vars.size();
        const std::size_t n_sum = sum_var != -1 ? 2 : 1;
        Factor r{out_vars, std::vector<cplx>(n_out, cplx{0})};
        for (std::size_t o = 0; o < n_out; ++o) {
            cplx acc = 0;
            for (std::size_t s = 0; s < n_sum; ++s) {
                const std::size_t a = o | (s << out_vars.size());
                cplx prod = 1;
                for (std::size_t f = 0; f < fs.size() && prod != cplx{0}; ++f) {
                    std::size_t j = 0;
                    for (std::size_t p = 0; p < where[f].size(); ++p) j |= ((a >> where[f][p]) & 1u) << p;
                    prod *= fs[f].data[j];
                }
                acc += prod;
            }
            r.data[o] = acc;
        }
        double mx = 0;
        for (const auto& z : r.data) mx = std::max(mx, std::abs(z));
        if (mx > 0)
            for (auto& z : r.data) z /= mx;
        return r;
    }

    static Factor eliminate(const std::vector<Factor>& fs, int var) {
        std::vector<int> vars;
        for (const auto& f : fs)
            for (int v : f.vars)
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        return multiply(fs, vars, var);
    }

    int next_var_ = 0;
    std::vector<Factor> factors_;
};

}  // namespace zxg
