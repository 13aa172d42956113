// Compares serial and sharded execution of the property suites: same
// reports, wall-clock speedup from the OpenMP case loop.
#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "lineal/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lineal;

namespace {

double timed(SuiteName name, const SuiteOptions& opts, std::string& text) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = run_suite(name, opts);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    text = report.to_text();
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs sharded suite execution benchmark"};
    std::string name = "subject-reduction";
    SuiteOptions opts;
    opts.cases = 2000;
    app.add_option("name", name, "suite to run");
    app.add_option("--cases", opts.cases);
    app.add_option("--seed", opts.gen.seed);
    CLI11_PARSE(app, argc, argv);

    auto suite = parse_suite_name(name);
    if (!suite) {
        std::cerr << "unknown suite " << name << "\n";
        return 2;
    }

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif

    SuiteOptions serial = opts;
    serial.jobs = 1;
    std::string serial_text, parallel_text;
    double t_serial = timed(*suite, serial, serial_text);

    SuiteOptions parallel = opts;
    parallel.jobs = 0;
    double t_parallel = timed(*suite, parallel, parallel_text);

    bool identical = serial_text == parallel_text;
    std::cout << "suite=" << suite_name_str(*suite) << " cases=" << opts.cases << " threads=" << threads
              << "\n";
    std::cout << "serial:   " << t_serial << " s\n";
    std::cout << "parallel: " << t_parallel << " s  (speedup " << (t_parallel > 0 ? t_serial / t_parallel : 0)
              << "x)\n";
    std::cout << "reports identical: " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
