#include <CLI11.hpp>
#include <chrono>
#include <cstdio>

#include "rhd/io.hpp"
#include "rhd/recovery.hpp"

// Replays a captured stream of conservative states through each recovery
// algorithm and reports wall time per algorithm. With --total-wall (the wall
// time of the capturing run) it also prints the runtime share each algorithm
// would have had.
int main(int argc, char** argv) {
  CLI::App app{"recovery micro-benchmark over a captured state stream"};
  std::string capture_path;
  double gamma = 5.0 / 3.0, total_wall = 0;
  int repeats = 1;
  app.add_option("--capture", capture_path, "capture file from solve --capture")
      ->required();
  app.add_option("--gamma", gamma, "EOS gamma of the capturing run");
  app.add_option("--total-wall", total_wall, "wall seconds of the capturing run");
  app.add_option("--repeats", repeats, "replay the stream this many times");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::vector<double> data = rhd::load_capture(capture_path);
    const size_t n = data.size() / 5;
    if (n == 0) {
      std::fprintf(stderr, "empty capture\n");
      return 1;
    }
    rhd::EosParams eos{gamma};

    auto bench = [&](rhd::RecoveryAlg alg) {
      double checksum = 0;
      long iters = 0;
      const auto t0 = std::chrono::steady_clock::now();
      for (int r = 0; r < repeats; ++r) {
        for (size_t i = 0; i < n; ++i) {
          const double* rec = &data[5 * i];
          const rhd::ConservedState u{rec[0], rec[1], rec[2], rec[3]};
          const rhd::RecoveryReport rep = rhd::recover(u, eos, alg, 1e-15, rec[4]);
          checksum += rep.W.p;
          iters += rep.iterations;
        }
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return std::tuple<double, double, double>{secs / repeats,
                                                (double)iters / (repeats * n), checksum};
    };

    std::printf("states: %zu\n", n);
    const char* names[4] = {"bisection", "fixedpoint", "hybrid", "newton"};
    const rhd::RecoveryAlg algs[4] = {rhd::RecoveryAlg::Bisection,
                                      rhd::RecoveryAlg::FixedPoint,
                                      rhd::RecoveryAlg::Hybrid, rhd::RecoveryAlg::Newton};
    const auto [hybrid_secs, hybrid_iters, hybrid_sum] = bench(rhd::RecoveryAlg::Hybrid);
    const double base = total_wall > hybrid_secs ? total_wall - hybrid_secs : 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto [secs, avg_iters, checksum] =
          i == 2 ? std::tuple<double, double, double>{hybrid_secs, hybrid_iters,
                                                      hybrid_sum}
                 : bench(algs[i]);
      if (total_wall > 0)
        std::printf("%-10s %.4fs  avg-iters %.2f  share %.1f%%  (checksum %.6g)\n",
                    names[i], secs, avg_iters, 100.0 * secs / (base + secs), checksum);
      else
        std::printf("%-10s %.4fs  avg-iters %.2f  (checksum %.6g)\n", names[i], secs,
                    avg_iters, checksum);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
