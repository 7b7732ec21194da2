#include "sofic/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sofic {

SparseIntMatrix amalgamation_reduce(const SparseIntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("amalgamation_reduce: matrix not square");
    SparseIntMatrix cur = m;
    while (true) {
        int n = cur.rows();
        // Group identical rows; the representative is the smallest index.
        std::vector<std::map<int, Int>> rows(static_cast<std::size_t>(n));
        for (const auto& [rc, v] : cur.entries()) rows[static_cast<std::size_t>(rc.first)][rc.second] = v;
        std::map<std::vector<std::pair<int, Int>>, int> seen;
        std::vector<int> group(static_cast<std::size_t>(n));
        int groups = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<std::pair<int, Int>> key(rows[static_cast<std::size_t>(i)].begin(),
                                                 rows[static_cast<std::size_t>(i)].end());
            auto [it, inserted] = seen.emplace(std::move(key), groups);
            group[static_cast<std::size_t>(i)] = it->second;
            if (inserted) ++groups;
        }
        if (groups == n) return cur;
        // Keep one state per group; sum the columns of merged states.
        std::vector<int> rep(static_cast<std::size_t>(groups), -1);
        for (int i = 0; i < n; ++i)
            if (rep[static_cast<std::size_t>(group[static_cast<std::size_t>(i)])] < 0)
                rep[static_cast<std::size_t>(group[static_cast<std::size_t>(i)])] = i;
        SparseIntMatrix next(groups, groups);
        for (const auto& [rc, v] : cur.entries()) {
            int gi = group[static_cast<std::size_t>(rc.first)];
            if (rep[static_cast<std::size_t>(gi)] != rc.first) continue;
            next.add(gi, group[static_cast<std::size_t>(rc.second)], v);
        }
        cur = std::move(next);
    }
}

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithForm smith_normal_form(const SparseIntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("smith_normal_form: matrix not square");
    int n = m.rows();
    auto a = m.dense();
    SmithForm out;
    out.divisors.assign(static_cast<std::size_t>(n), 0);

    for (int s = 0; s < n; ++s) {
        while (true) {
            // Smallest nonzero absolute value in the trailing block.
            int pr = -1, pc = -1;
            Int best = 0;
            for (int i = s; i < n; ++i)
                for (int j = s; j < n; ++j) {
                    const Int& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    if (v == 0) continue;
                    Int av = abs_int(v);
                    if (pr < 0 || av < best) {
                        best = av;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0) {
                // Trailing block is zero; remaining divisors stay 0.
                for (int i = s; i < n; ++i) out.divisors[static_cast<std::size_t>(i)] = 0;
                return out;
            }
            std::swap(a[static_cast<std::size_t>(s)], a[static_cast<std::size_t>(pr)]);
            for (int i = 0; i < n; ++i)
                std::swap(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)],
                          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)]);

            const Int piv = a[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)];
            bool clean = true;
            for (int i = s + 1; i < n; ++i) {
                Int& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
                if (v == 0) continue;
                Int q = v / piv;
                if (q != 0)
                    for (int j = s; j < n; ++j)
                        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                            q * a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] != 0) clean = false;
            }
            for (int j = s + 1; j < n; ++j) {
                Int& v = a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
                if (v == 0) continue;
                Int q = v / piv;
                if (q != 0)
                    for (int i = s; i < n; ++i)
                        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                            q * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
                if (a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] != 0) clean = false;
            }
            if (!clean) continue;  // smaller remainders appeared; re-pivot

            // Enforce divisibility of the trailing block by the pivot.
            int bi = -1;
            for (int i = s + 1; i < n && bi < 0; ++i)
                for (int j = s + 1; j < n; ++j)
                    if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % piv != 0) {
                        bi = i;
                        break;
                    }
            if (bi >= 0) {
                for (int j = s; j < n; ++j)
                    a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] +=
                        a[static_cast<std::size_t>(bi)][static_cast<std::size_t>(j)];
                continue;
            }
            out.divisors[static_cast<std::size_t>(s)] = abs_int(piv);
            break;
        }
    }
    return out;
}

Int determinant(const SparseIntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant: matrix not square");
    int n = m.rows();
    if (n == 0) return 1;
    auto a = m.dense();
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(p)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                    prev;
            }
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
        }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign * a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

BowenFranksInvariant bowen_franks(const SparseIntMatrix& adjacency) {
    SparseIntMatrix ia = identity_minus(adjacency);
    Int det = determinant(ia);
    SmithForm snf = smith_normal_form(ia);
    BowenFranksInvariant bf;
    bf.sign = det == 0 ? DetSign::zero : (det < 0 ? DetSign::negative : DetSign::positive);
    Int prod = 1;
    for (const Int& d : snf.divisors) {
        prod *= d;
        if (d != 1) bf.divisors.push_back(d);
    }
    if (abs_int(det) != abs_int(prod))
        throw std::logic_error("bowen_franks: SNF product disagrees with determinant");
    return bf;
}

BowenFranksInvariant bowen_franks(const LabelledGraph& g) {
    return bowen_franks(adjacency_matrix(g));
}

bool franks_equivalent(const BowenFranksInvariant& a, const BowenFranksInvariant& b) {
    return a == b;
}

double entropy(const SparseIntMatrix& m, double tol) {
    if (!m.square()) throw std::invalid_argument("entropy: matrix not square");
    int n = m.rows();
    if (n == 0) return -std::numeric_limits<double>::infinity();
    for (const auto& [rc, v] : m.entries())
        if (v < 0) throw std::invalid_argument("entropy: negative entry");
    if (m.entries().empty()) return -std::numeric_limits<double>::infinity();

    // Power iteration on A + I (primitive on each relevant block) with
    // Rayleigh-quotient convergence; the shift removes periodicity.
    std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    double prev = -1.0;
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> y = x;  // the +I part
        for (const auto& [rc, v] : m.entries())
            y[static_cast<std::size_t>(rc.first)] +=
                v.convert_to<double>() * x[static_cast<std::size_t>(rc.second)];
        double num = 0, den = 0;
        for (int i = 0; i < n; ++i) {
            num += y[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            den += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        double lambda = num / den - 1.0;
        double norm = 0;
        for (double v : y) norm = std::max(norm, std::abs(v));
        for (double& v : y) v /= norm;
        x = std::move(y);
        if (iter > 0 && std::abs(lambda - prev) < tol / 10.0)
            return lambda <= 0 ? -std::numeric_limits<double>::infinity() : std::log(lambda);
        prev = lambda;
    }
    throw std::runtime_error("entropy: power iteration did not converge");
}

std::string render_divisors(const std::vector<Int>& divisors) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i) os << ", ";
        os << divisors[i];
    }
    os << ']';
    return os.str();
}

std::string render_bf(const BowenFranksInvariant& bf) {
    std::string out;
    if (bf.sign == DetSign::negative) out += '-';
    if (bf.sign == DetSign::positive) out += '+';
    if (bf.divisors.empty()) return out + "Z/1Z";
    std::ostringstream os;
    for (std::size_t i = 0; i < bf.divisors.size(); ++i) {
        if (i) os << '+';
        if (bf.divisors[i] == 0)
            os << 'Z';
        else
            os << "Z/" << bf.divisors[i] << 'Z';
    }
    return out + os.str();
}

}  // namespace sofic
