// Times the parameter-rectangle sweep: the OpenMP kernel against the serial
// reference it is tested against, on a few grid sizes. The two must produce
// identical CSV bytes; the run aborts if they ever differ.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rotor/tracts.hpp"

using Clock = std::chrono::steady_clock;

static double run_ms(rotor::SweepGrid (*kernel)(const rotor::SweepSpec&),
                     const rotor::SweepSpec& spec, std::string& csv) {
    auto t0 = Clock::now();
    csv = kernel(spec).to_csv();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char** argv) {
    int sizes[] = {20, 40, 80};
    int repeat = argc > 1 ? std::atoi(argv[1]) : 3;
    if (repeat < 1) repeat = 1;

    std::printf("%8s %6s %12s %12s %9s\n", "grid", "cells", "serial ms",
                "parallel ms", "speedup");
    for (int n : sizes) {
        rotor::SweepSpec spec{n, n, 16};
        double serial = 1e300, parallel = 1e300;
        std::string ref, out;
        for (int k = 0; k < repeat; ++k) {
            double s = run_ms(rotor::sweep_serial, spec, ref);
            double p = run_ms(rotor::sweep_parallel, spec, out);
            if (out != ref) {
                std::fprintf(stderr, "kernel mismatch on %dx%d\n", n, n);
                return 1;
            }
            if (s < serial) serial = s;
            if (p < parallel) parallel = p;
        }
        std::printf("%4dx%-3d %6d %12.2f %12.2f %8.2fx\n", n, n, n * n, serial,
                    parallel, serial / parallel);
    }
    return 0;
}
