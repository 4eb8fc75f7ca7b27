#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "nlslab/common.hpp"

using namespace nlslab;

TEST_CASE("kahan summation stays accurate over many small terms") {
    KahanSum s;
    for (int i = 0; i < 1000000; ++i) s.add(0.1);
    CHECK(std::abs(s.value() - 100000.0) < 1e-9);
}

TEST_CASE("thread cap respects requests and the environment variable") {
    unsetenv("NLSLAB_MAX_THREADS");
    set_max_threads(5);
    CHECK(max_threads() == 5);
    set_max_threads(0);
    CHECK(max_threads() >= 1);

    setenv("NLSLAB_MAX_THREADS", "2", 1);
    set_max_threads(5);
    CHECK(max_threads() == 2);
    unsetenv("NLSLAB_MAX_THREADS");
    set_max_threads(1);
}

TEST_CASE("parallel_for tiles the index range exactly once") {
    unsetenv("NLSLAB_MAX_THREADS");
    for (int threads : {1, 3, 4}) {
        set_max_threads(threads);
        std::vector<int> marks(103, 0);
        parallel_for(marks.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) marks[i] += 1;
        });
        for (int m : marks) CHECK(m == 1);
    }
    set_max_threads(1);
}

TEST_CASE("parallel_for with empty range visits no index") {
    parallel_for(0, [&](std::size_t b, std::size_t e) { CHECK(b == e); });
}

TEST_CASE("complex array is zero initialized, movable, and size checked") {
    CplxArray a(8);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == cplx(0.0, 0.0));
    a[3] = cplx(1.0, -2.0);

    CplxArray b = std::move(a);
    CHECK(b.size() == 8);
    CHECK(b[3] == cplx(1.0, -2.0));

    CplxArray c(4);
    CHECK_THROWS_AS(c.copy_from(b), std::invalid_argument);
    CplxArray d(8);
    d.copy_from(b);
    CHECK(d[3] == cplx(1.0, -2.0));
}
