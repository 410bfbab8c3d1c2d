// Benchmark comparing the serial reference kernels against the OpenMP ones.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "qso6/generators.hpp"

using namespace qso6;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_product(int D) {
    auto m = ModelParams::canonical(D);
    PbwSet pbw(Variant::main, BasisKind::TildeB, m);
    const SparseOperator& x = pbw.upper(1, 6);
    const SparseOperator& y = pbw.upper(2, 5);
    auto t0 = Clock::now();
    SparseOperator ps = SparseOperator::multiply_serial(x, y);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    SparseOperator pp = SparseOperator::multiply(x, y);
    double tp = seconds_since(t0);
    std::printf("D=%d dim=%3d  I16*I25: serial %8.3f ms   omp(%d) %8.3f ms   speedup %.2fx  %s\n", D,
                m.dim(), ts * 1e3, omp_get_max_threads(), tp * 1e3, ts / tp,
                ps == pp ? "match" : "MISMATCH");
}

void bench_pbw_build(int D) {
    auto m = ModelParams::canonical(D);
    auto t0 = Clock::now();
    PbwSet pbw(Variant::main, BasisKind::TildeB, m);
    double t = seconds_since(t0);
    std::size_t nnz = 0;
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 6; ++j) nnz += pbw.upper(i, j).nnz();
    std::printf("D=%d dim=%3d  PBW ladder build: %8.3f ms  (total nnz %zu)\n", D, m.dim(), t * 1e3, nnz);
}

} // namespace

int main(int argc, char** argv) {
    int dmax = argc > 1 ? std::atoi(argv[1]) : 6;
    for (int D = 3; D <= dmax; ++D) {
        bench_pbw_build(D);
        bench_product(D);
    }
    return 0;
}
