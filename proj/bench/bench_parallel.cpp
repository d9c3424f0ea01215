// Compares the serial reference execution of the alignment / mining kernels
// with the multi-threaded execution on a synthetic database, verifying that
// both modes produce identical results.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "lpmkit/align.hpp"
#include "lpmkit/metrics.hpp"
#include "lpmkit/process_tree.hpp"
#include "lpmkit/seqdb.hpp"
#include "lpmkit/spm.hpp"

namespace {

lpmkit::SequenceDatabase synthetic_db(std::size_t sequences, std::size_t length) {
  std::mt19937 rng(20240117);
  const std::vector<std::string> alphabet = {"A", "B", "C", "D", "E", "F"};
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> burst(0, 3);
  std::vector<lpmkit::Sequence> out;
  for (std::size_t s = 0; s < sequences; ++s) {
    lpmkit::Sequence seq;
    while (seq.size() < length) {
      // Mix embedded motifs with noise so alignments have real work to do.
      switch (burst(rng)) {
        case 0:
          seq.insert(seq.end(), {"A", "B"});
          break;
        case 1:
          seq.insert(seq.end(), {"E", "B", "A", "F"});
          break;
        case 2:
          seq.insert(seq.end(), {"A", "C", "D"});
          break;
        default:
          seq.push_back(alphabet[pick(rng)]);
          break;
      }
    }
    seq.resize(length);
    out.push_back(std::move(seq));
  }
  return lpmkit::SequenceDatabase(out);
}

template <typename F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t sequences = 64;
  std::size_t length = 48;
  try {
    if (argc > 1) sequences = std::stoul(argv[1]);
    if (argc > 2) length = std::stoul(argv[2]);
  } catch (const std::exception&) {
    std::cerr << "usage: " << argv[0] << " [sequences] [events-per-sequence]\n";
    return 2;
  }

  const lpmkit::SequenceDatabase db = synthetic_db(sequences, length);
  // Keep the pattern search proportionate: a fixed tiny support threshold on a
  // large database makes the closed-pattern space explode combinatorially.
  const int min_sup = static_cast<int>(std::max<std::size_t>(8, sequences * length / 8));
  std::cout << "database: " << db.size() << " sequences x " << length << " events, "
            << lpmkit::parallel::hardware_threads() << " hardware threads, "
            << "pattern min support " << min_sup << "\n";

  const std::vector<const char*> trees = {
      "→(A,∧(B,→(C,D)))",
      "→(E,↻(→(B,A)),F)",
      "→(A,B)",
  };
  std::vector<lpmkit::AcceptingPetriNet> nets;
  for (const char* text : trees) {
    nets.push_back(lpmkit::tree_to_net(lpmkit::parse_tree(text, "bench")));
  }

  double serial_cov = 0.0;
  double parallel_cov = 0.0;
  const double t_serial = time_seconds([&] {
    serial_cov = lpmkit::coverage(db, nets, lpmkit::kDefaultStateBudget,
                                  lpmkit::Mode::serial);
  });
  const double t_parallel = time_seconds([&] {
    parallel_cov = lpmkit::coverage(db, nets, lpmkit::kDefaultStateBudget,
                                    lpmkit::Mode::multi_threaded);
  });
  std::cout << "segment+coverage  serial " << t_serial << "s  multi " << t_parallel
            << "s  speedup " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "\n";
  if (serial_cov != parallel_cov) {
    std::cerr << "MISMATCH: serial coverage " << serial_cov << " vs multi "
              << parallel_cov << "\n";
    return 1;
  }

  std::size_t serial_patterns = 0;
  std::size_t parallel_patterns = 0;
  const double t_spm_serial = time_seconds([&] {
    serial_patterns = lpmkit::mine_clogsgrow(db, min_sup, lpmkit::Mode::serial).size();
  });
  const double t_spm_parallel = time_seconds([&] {
    parallel_patterns =
        lpmkit::mine_clogsgrow(db, min_sup, lpmkit::Mode::multi_threaded).size();
  });
  std::cout << "pattern mining    serial " << t_spm_serial << "s  multi "
            << t_spm_parallel << "s  speedup "
            << (t_spm_parallel > 0 ? t_spm_serial / t_spm_parallel : 0.0) << "\n";
  if (serial_patterns != parallel_patterns) {
    std::cerr << "MISMATCH: serial patterns " << serial_patterns << " vs multi "
              << parallel_patterns << "\n";
    return 1;
  }

  std::cout << "results identical across modes\n";
  return 0;
}
