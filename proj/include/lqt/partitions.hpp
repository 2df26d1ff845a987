#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lqt/errors.hpp"

namespace lqt {

// Integer partition: nonincreasing positive parts. The empty partition is
// the unique partition of 0.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw StructureError("partition parts must be positive");
            if (i && parts[i] > parts[i - 1])
                throw StructureError("partition parts must be nonincreasing");
        }
    }

    int m() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    auto operator<=>(const Partition&) const = default;

    std::string str() const {
        if (parts.empty()) return "()";
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

// All partitions of m, first part decreasing (reverse-lexicographic order):
// P(3) = {(3), (2,1), (1,1,1)}.
inline std::vector<Partition> partitions(int m) {
    if (m < 0) throw StructureError("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

// Weight vector [α,β]_n = (α_1,...,α_{l1}, 0,...,0, -β_{l2},...,-β_1).
struct WeightLabel {
    Partition alpha, beta;
    int n = 0;

    WeightLabel() = default;
    WeightLabel(Partition a, Partition b, int n_) : alpha(std::move(a)), beta(std::move(b)), n(n_) {
        if (alpha.m() != beta.m())
            throw StructureError("weight label needs partitions of the same integer");
        if (alpha.length() + beta.length() > n)
            throw StructureError("weight label needs l(alpha)+l(beta) <= n");
    }

    int m() const { return alpha.m(); }

    std::vector<int> vector() const {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < alpha.length(); ++i)
            v[static_cast<std::size_t>(i)] = alpha.parts[static_cast<std::size_t>(i)];
        for (int i = 0; i < beta.length(); ++i)
            v[static_cast<std::size_t>(n - 1 - i)] = -beta.parts[static_cast<std::size_t>(i)];
        return v;
    }

    std::string str() const { return "[" + alpha.str() + "," + beta.str() + "]_" + std::to_string(n); }

    bool operator==(const WeightLabel& o) const {
        return alpha == o.alpha && beta == o.beta && n == o.n;
    }
};

// Standard Young tableau: rows and columns strictly increasing.
struct Tableau {
    Partition shape;
    std::vector<std::vector<int>> rows;

    // 1-based row containing the value v.
    int row_of(int v) const {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int x : rows[r])
                if (x == v) return static_cast<int>(r) + 1;
        throw StructureError("value not in tableau");
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r) s += "|";
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                if (c) s += ",";
                s += std::to_string(rows[r][c]);
            }
        }
        return s + "]";
    }
};

// All standard tableaux of the given shape, in the order produced by filling
// values 1..m into the rows top-first.
inline std::vector<Tableau> standard_tableaux(const Partition& shape) {
    std::vector<Tableau> out;
    const int m = shape.m();
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(shape.length()));
    auto rec = [&](auto&& self, int v) -> void {
        if (v > m) {
            out.push_back(Tableau{shape, rows});
            return;
        }
        for (int r = 0; r < shape.length(); ++r) {
            std::size_t len = rows[static_cast<std::size_t>(r)].size();
            if (static_cast<int>(len) >= shape.parts[static_cast<std::size_t>(r)]) continue;
            if (r > 0 && rows[static_cast<std::size_t>(r) - 1].size() <= len) continue;
            rows[static_cast<std::size_t>(r)].push_back(v);
            self(self, v + 1);
            rows[static_cast<std::size_t>(r)].pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace lqt
