#pragma once

#include <cstdint>
#include <string>

namespace perconet::cli {

struct Options {
  std::string lattice;
  std::string network;
  std::string boundary = "periodic";
  std::string strategy = "cep";
  int size = 0;  // 0 picks the command default
  int lx = 0;
  int ly = 0;
  std::string p;
  std::string phi1;
  std::int64_t samples = 0;  // 0 picks the command default
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out;
  std::string sizes = "64,128";
  int bootstrap = 200;
  int order = 10;
  int n_max = 6;
  std::string target;
  bool thresholds = false;
  std::int64_t threshold_samples = 0;
};

/// Each returns the process exit status and prints a one-line summary.
int run_lattice(const Options& o);
int run_transform(const Options& o);
int run_threshold(const Options& o);
int run_theta(const Options& o);
int run_pab(const Options& o);
int run_compare(const Options& o);
int run_series(const Options& o);
int run_quantum_verify(const Options& o);
int run_reproduce(const Options& o);

}  // namespace perconet::cli
