#include "tptd/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tptd {

Address::Address(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) throw ContractError("address: m must be >= 2");
    long long total = 0;
    for (int c : counts_) {
        if (c < 0) throw ContractError("address: negative count");
        total += c;
    }
    if (total <= 0 || total > std::numeric_limits<int>::max()) throw ContractError("address: bad total");
    n_div_ = static_cast<int>(total);
}

Address Address::parse(std::string_view text) {
    std::vector<int> counts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t slash = std::min(text.find('/', pos), text.size());
        const std::string_view part = text.substr(pos, slash - pos);
        int value = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc() || end != part.data() + part.size()) {
            throw ContractError("address: cannot parse '" + std::string(text) + "'");
        }
        counts.push_back(value);
        pos = slash + 1;
    }
    return Address(std::move(counts));
}

std::vector<double> Address::real() const {
    std::vector<double> r(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) r[i] = static_cast<double>(counts_[i]) / n_div_;
    return r;
}

int Address::min_count() const { return *std::min_element(counts_.begin(), counts_.end()); }
int Address::max_count() const { return *std::max_element(counts_.begin(), counts_.end()); }

std::string Address::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) s += '/';
        s += std::to_string(counts_[i]);
    }
    return s;
}

std::size_t address_count(std::size_t m, std::size_t n_div) {
    if (m < 2) throw ContractError("address_count: m must be >= 2");
    // C(n_div + k, k) built incrementally; each partial product is itself a binomial.
    const std::size_t k = m - 1;
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t factor = n_div + i;
        const std::size_t g = std::gcd(result, i);
        const std::size_t r = result / g;
        const std::size_t f = factor / (i / g);
        if (r != 0 && f > std::numeric_limits<std::size_t>::max() / r) {
            throw std::overflow_error("address_count: C(" + std::to_string(n_div + k) + ", " + std::to_string(k) +
                                      ") overflows");
        }
        result = r * f;
    }
    return result;
}

namespace {

void compose(std::size_t index, int remaining, std::vector<int>& current, std::vector<Address>& out) {
    if (index + 1 == current.size()) {
        current[index] = remaining;
        out.emplace_back(current);
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        current[index] = c;
        compose(index + 1, remaining - c, current, out);
    }
}

}  // namespace

std::vector<Address> generate_addresses(std::size_t m, std::size_t n_div) {
    if (m < 2) throw ContractError("generate_addresses: m must be >= 2");
    if (n_div < 1) throw ContractError("generate_addresses: n_div must be >= 1");
    if (n_div > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw std::overflow_error("generate_addresses: n_div too large");
    }
    const std::size_t count = address_count(m, n_div);
    std::vector<Address> out;
    if (count > out.max_size()) throw std::overflow_error("generate_addresses: too many addresses");
    out.reserve(count);
    std::vector<int> current(m, 0);
    compose(0, static_cast<int>(n_div), current, out);
    return out;
}

std::size_t face_dimension(const Address& a) {
    const auto zeros = static_cast<std::size_t>(std::count(a.counts().begin(), a.counts().end(), 0));
    return a.size() - 1 - zeros;
}

std::vector<std::vector<Address>> split_by_face(std::span<const Address> addresses) {
    if (addresses.empty()) return {};
    std::vector<std::vector<Address>> faces(addresses.front().size());
    for (const auto& a : addresses) faces.at(face_dimension(a)).push_back(a);
    return faces;
}

AffineMap::AffineMap(std::vector<std::vector<double>> columns) : columns_(std::move(columns)) {
    const std::size_t m = columns_.size();
    if (m < 2) throw ContractError("affine map: needs m >= 2 columns");
    for (const auto& c : columns_) {
        if (c.size() != m) throw ContractError("affine map: column length must equal m");
        TargetPoint check(c);  // throws when off the target hyperplane
    }
}

std::vector<double> AffineMap::apply(std::span<const double> a) const {
    const std::size_t m = columns_.size();
    if (a.size() != m) throw ContractError("affine map: address length mismatch");
    std::vector<double> t(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) t[i] += columns_[j][i] * a[j];
    }
    return t;
}

AffineMap build_affine_map(std::vector<std::vector<double>> vertex_images) {
    return AffineMap(std::move(vertex_images));
}

TargetPoint initial_target(const AffineMap& map, const Address& a) { return TargetPoint(map.apply(a.real())); }

std::vector<Address> guide_set(const Address& a) {
    if (face_dimension(a) != a.size() - 1) {
        throw ContractError("guide_set: address " + a.to_string() + " is not interior");
    }
    const auto& c = a.counts();
    const std::size_t m = c.size();
    const int lo = a.min_count();
    const auto at_min = static_cast<std::size_t>(std::count(c.begin(), c.end(), lo));
    std::vector<Address> guides;
    if (at_min == m) return guides;

    if (at_min >= 2) {
        const auto l = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
        for (std::size_t k = 0; k < m; ++k) {
            if (k == l) continue;
            std::vector<int> g = c;
            ++g[l];
            --g[k];
            guides.emplace_back(std::move(g));
        }
    } else {
        const auto q = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
        for (std::size_t p = 0; p < m; ++p) {
            if (p == q) continue;
            std::vector<int> g = c;
            --g[q];
            ++g[p];
            guides.emplace_back(std::move(g));
        }
    }
    return guides;
}

std::vector<std::vector<Address>> relocation_layers(std::span<const Address> interior) {
    std::map<int, std::vector<Address>> by_min;
    for (const auto& a : interior) {
        if (face_dimension(a) != a.size() - 1) {
            throw ContractError("relocation_layers: address " + a.to_string() + " is not interior");
        }
        by_min[a.min_count()].push_back(a);
    }
    std::vector<std::vector<Address>> layers;
    layers.reserve(by_min.size());
    for (auto& [level, members] : by_min) {
        std::sort(members.begin(), members.end(), [](const Address& x, const Address& y) {
            const int mx = x.max_count();
            const int my = y.max_count();
            if (mx != my) return mx > my;
            return x < y;
        });
        layers.push_back(std::move(members));
    }
    return layers;
}

}  // namespace tptd
