#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "kaczeros/rng.hpp"

using namespace kaczeros;

TEST_CASE("philox4x32-10 known answers") {
    using Block = std::array<std::uint32_t, 4>;
    CHECK(PhiloxStream::block({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(PhiloxStream::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(PhiloxStream::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
    PhiloxStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    std::vector<std::uint32_t> va, vb, vc, vd;
    for (int i = 0; i < 64; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

TEST_CASE("split children depend only on parent and index") {
    PhiloxStream parent(9, 1);
    PhiloxStream x = parent.split(5);
    parent();
    parent();
    PhiloxStream y = parent.split(5);
    PhiloxStream z = parent.split(6);
    const auto vx = x.next_u64();
    CHECK(vx == y.next_u64());
    CHECK(vx != z.next_u64());
}

TEST_CASE("stream ids do not collide on a small grid") {
    std::set<std::uint64_t> ids;
    for (std::uint64_t a = 0; a < 600; ++a)
        for (std::uint64_t b = 0; b < 100; ++b) ids.insert(stream_id(a, b));
    CHECK(ids.size() == 60000);
}

TEST_CASE("uniform draws lie strictly inside (0, 1) with the right moments") {
    PhiloxStream rng(1, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("normal, exponential and complex normal moments") {
    PhiloxStream rng(2, 0);
    const int n = 200000;
    double m1 = 0, m2 = 0, e1 = 0, c2 = 0;
    std::complex<double> cm = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        m1 += x;
        m2 += x * x;
        const double e = rng.exponential();
        REQUIRE(e > 0.0);
        e1 += e;
        const auto z = rng.complex_normal();
        cm += z;
        c2 += std::norm(z);
    }
    const double tol = 5.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(m1 / n) < tol);
    CHECK(std::abs(m2 / n - 1.0) < 2.0 * tol);
    CHECK(std::abs(e1 / n - 1.0) < tol);
    CHECK(std::abs(cm / static_cast<double>(n)) < tol);
    CHECK(std::abs(c2 / n - 1.0) < tol);
}
