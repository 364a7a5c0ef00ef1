// Compares the serial reference paths against the OpenMP kernels on the
// workloads that dominate the verification suites. Results must agree
// bit-for-bit; only the wall time may differ.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "padicdyn/ergodicity.hpp"
#include "padicdyn/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using padicdyn::ExecMode;

double time_ms(const std::function<void()>& fn, int repeats) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count() / repeats;
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   results %s\n", name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, identical ? "identical" : "DIFFER");
}

std::uint64_t residue_map_checksum(const padicdyn::ResidueSphereMap& map) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < map.size(); ++i) {
        h = (h ^ map.image_index(i)) * 1099511628211ULL;
    }
    return h;
}

std::string outcome_digest(const padicdyn::SuiteOutcome& s) {
    std::string d = s.name + "|" + std::to_string(s.checks) + "|" + std::to_string(s.failures);
    for (const auto& note : s.notes) d += "|" + note;
    return d;
}

} // namespace

int main(int argc, char** argv) {
    int repeats = 3;
    if (argc > 1) repeats = std::max(1, std::atoi(argv[1]));
#ifdef _OPENMP
    std::printf("OpenMP with %d threads, %d repeats per row\n\n", omp_get_max_threads(),
                repeats);
#else
    std::printf("built without OpenMP; both columns run serially (%d repeats)\n\n", repeats);
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        // Residue-map construction at the largest enumerated level for p = 3.
        using namespace padicdyn;
        PadicNumber a = PadicNumber::parse("4/1", 3);
        PadicNumber b = PadicNumber::parse("14/1", 3);
        PadicNumber c = PadicNumber::parse("-5/2", 3);
        MapParams params(a, b, c);
        long r_exp = profile(params).max_exponent() + 1;
        ConjugatedMap conj = conjugate_to_unit_sphere(params, r_exp);
        std::uint64_t serial_sum = 0, parallel_sum = 0;
        double s = time_ms(
            [&] {
                serial_sum =
                    residue_map_checksum(ResidueSphereMap::build(conj, 12, ExecMode::Serial));
            },
            repeats);
        double p = time_ms(
            [&] {
                parallel_sum =
                    residue_map_checksum(ResidueSphereMap::build(conj, 12, ExecMode::Parallel));
            },
            repeats);
        row("residue map p=3 level 12", s, p, serial_sum == parallel_sum);
    }

    {
        std::string serial_digest, parallel_digest;
        double s = time_ms(
            [&] {
                serial_digest =
                    outcome_digest(padicdyn::radius_model_suite(11, 40, 8, 18, ExecMode::Serial));
            },
            repeats);
        double p = time_ms(
            [&] {
                parallel_digest = outcome_digest(
                    padicdyn::radius_model_suite(11, 40, 8, 18, ExecMode::Parallel));
            },
            repeats);
        row("radius-model sweep", s, p, serial_digest == parallel_digest);
    }

    {
        std::string serial_digest, parallel_digest;
        double s = time_ms(
            [&] {
                serial_digest =
                    outcome_digest(padicdyn::p2_criterion_suite(7, 60, 12, ExecMode::Serial));
            },
            repeats);
        double p = time_ms(
            [&] {
                parallel_digest =
                    outcome_digest(padicdyn::p2_criterion_suite(7, 60, 12, ExecMode::Parallel));
            },
            repeats);
        row("p2 criterion/oracle sweep", s, p, serial_digest == parallel_digest);
    }

    {
        std::string serial_digest, parallel_digest;
        double s = time_ms(
            [&] {
                serial_digest =
                    outcome_digest(padicdyn::mod4_bruteforce_suite(3, 120, 12, ExecMode::Serial));
            },
            repeats);
        double p = time_ms(
            [&] {
                parallel_digest = outcome_digest(
                    padicdyn::mod4_bruteforce_suite(3, 120, 12, ExecMode::Parallel));
            },
            repeats);
        row("mod4 vs brute force sweep", s, p, serial_digest == parallel_digest);
    }

    return 0;
}
