#ifndef TPTD_LATTICE_HPP
#define TPTD_LATTICE_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tptd/scalarize.hpp"

namespace tptd {

/// Lattice point a'/n_div on the (m-1)-simplex: nonnegative integer counts
/// summing to n_div. Identifies one subproblem; ordered lexicographically by
/// counts.
class Address {
public:
    /// Throws ContractError on negative counts, m < 2 or a zero total.
    explicit Address(std::vector<int> counts);

    /// Parses "a1/a2/.../am".
    static Address parse(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
    [[nodiscard]] int n_div() const noexcept { return n_div_; }
    [[nodiscard]] const std::vector<int>& counts() const noexcept { return counts_; }
    [[nodiscard]] int operator[](std::size_t i) const noexcept { return counts_[i]; }

    /// counts / n_div.
    [[nodiscard]] std::vector<double> real() const;
    [[nodiscard]] int min_count() const;
    [[nodiscard]] int max_count() const;

    /// "a1/a2/.../am".
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const Address& other) const { return counts_ <=> other.counts_; }
    bool operator==(const Address& other) const { return counts_ == other.counts_; }

private:
    std::vector<int> counts_;
    int n_div_ = 0;
};

/// C(n_div + m - 1, m - 1). Throws std::overflow_error if it does not fit.
[[nodiscard]] std::size_t address_count(std::size_t m, std::size_t n_div);

/// Every composition of n_div into m nonnegative parts, lexicographic order.
[[nodiscard]] std::vector<Address> generate_addresses(std::size_t m, std::size_t n_div);

/// m - 1 - (number of zero counts): 0 for vertices, m - 1 for interior points.
[[nodiscard]] std::size_t face_dimension(const Address& a);

/// Addresses grouped by face dimension; element d holds A_d in input order.
[[nodiscard]] std::vector<std::vector<Address>> split_by_face(std::span<const Address> addresses);

/// Linear map t = B a whose column i is the target-plane image of vertex i.
class AffineMap {
public:
    /// Throws ContractError unless there are m columns of length m, each on
    /// the target hyperplane.
    explicit AffineMap(std::vector<std::vector<double>> columns);

    [[nodiscard]] std::size_t size() const noexcept { return columns_.size(); }
    [[nodiscard]] const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }

    [[nodiscard]] std::vector<double> apply(std::span<const double> a) const;

private:
    std::vector<std::vector<double>> columns_;
};

[[nodiscard]] AffineMap build_affine_map(std::vector<std::vector<double>> vertex_images);

/// B * a_real.
[[nodiscard]] TargetPoint initial_target(const AffineMap& map, const Address& a);

/// Neighbouring addresses whose relocation steers an interior address:
///   - all counts equal: empty;
///   - two or more counts at the minimum: move one unit from each k != l to
///     l = argmax (lowest index on ties), one guide per k;
///   - unique minimum q: move one unit from q to each p != q, one guide per p.
/// Throws ContractError if `a` has a zero count.
[[nodiscard]] std::vector<Address> guide_set(const Address& a);

/// Orders interior addresses so that every guide is processed before the
/// address it steers: layers of equal min count, ascending. Within a layer,
/// descending max count then lexicographic (a same-layer guide always has a
/// larger max count than the address it steers).
[[nodiscard]] std::vector<std::vector<Address>> relocation_layers(std::span<const Address> interior);

}  // namespace tptd

#endif  // TPTD_LATTICE_HPP
