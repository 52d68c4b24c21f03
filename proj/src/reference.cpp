#include "fsg/reference.hpp"

#include <limits>

namespace fsg::reference {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const std::vector<std::size_t> kLocalN{16, 32, 64, 128};
const std::vector<std::size_t> kTwoMeshN{32, 64, 128, 256, 512};
}  // namespace

const SpatialSeries& spatial() {
  static const SpatialSeries s{
      1.5, 1.5, 800,
      {4, 8, 16, 32},
      {5.3313e-03, 1.3727e-03, 3.4252e-04, 8.2408e-05},
      {1.9575, 2.0027, 2.0553},
      0.02, 0.1};
  return s;
}

const std::vector<Series>& local_example1() {
  static const std::vector<Series> t{
      // r = 1
      {1.1, 1.0, 0, kLocalN, {3.1876e-03, 1.7222e-03, 8.9359e-04, 4.5512e-04},
       {0.8882, 0.9466, 0.9733}, 0.02, 0.1},
      {1.5, 1.0, 0, kLocalN, {4.3486e-03, 2.1507e-03, 1.0670e-03, 5.3091e-04},
       {1.0157, 1.0112, 1.0071}, 0.02, 0.1},
      {1.9, 1.0, 0, kLocalN, {1.1931e-03, 5.6317e-04, 2.7287e-04, 1.3419e-04},
       {1.0830, 1.0454, 1.0240}, 0.02, 0.1},
      // r = 1.5
      {1.1, 1.5, 0, kLocalN, {8.1494e-04, 3.2829e-04, 1.2611e-04, 4.7144e-05},
       {1.3117, 1.3803, 1.4195}, 0.02, 0.1},
      {1.5, 1.5, 0, kLocalN, {1.6334e-03, 5.7432e-04, 2.0081e-04, 7.0167e-05},
       {1.5080, 1.5160, 1.5170}, 0.02, 0.1},
      {1.9, 1.5, 0, kLocalN, {5.3904e-04, 1.8026e-04, 6.0908e-05, 2.0790e-05},
       {1.5803, 1.5654, 1.5508}, 0.02, 0.1},
      // r = 2
      {1.1, 2.0, 0, kLocalN, {5.1921e-04, 1.4347e-04, 3.7963e-05, 9.8151e-06},
       {1.8556, 1.9181, 1.9515}, 0.02, 0.1},
      {1.5, 2.0, 0, kLocalN, {1.1444e-03, 3.1736e-04, 8.5638e-05, 2.2697e-05},
       {1.8504, 1.8898, 1.9158}, 0.02, 0.1},
      {1.9, 2.0, 0, kLocalN, {4.6356e-04, 1.2709e-04, 3.4371e-05, 9.2109e-06},
       {1.8669, 1.8865, 1.8998}, 0.02, 0.1},
  };
  return t;
}

const std::vector<Series>& two_mesh_example2() {
  static const std::vector<Series> t{
      // r = 1
      {1.1, 1.0, 25, kTwoMeshN,
       {1.0657e-02, 5.2836e-03, 2.6337e-03, 1.3154e-03, 6.5741e-04},
       {1.0122, 1.0044, 1.0016, 1.0006}, 0.05, 0.15},
      {1.5, 1.0, 25, kTwoMeshN,
       {4.2853e-02, 1.9864e-02, 9.5653e-03, 4.6928e-03, 2.3240e-03},
       {1.1093, 1.0542, 1.0274, 1.0139}, 0.05, 0.15},
      {1.9, 1.0, 25, kTwoMeshN,
       {3.3683e-01, 1.4621e-01, 6.7578e-02, 3.2411e-02, 1.5860e-02},
       {1.2040, 1.1134, 1.0601, 1.0311}, 0.05, 0.15},
      // r = 1.5
      {1.1, 1.5, 25, kTwoMeshN,
       {3.0512e-03, 1.0309e-03, 3.5646e-04, 1.2489e-04, 4.4052e-05},
       {1.5654, 1.5321, 1.5131, 1.5033}, 0.05, 0.15},
      {1.5, 1.5, 25, kTwoMeshN,
       {1.8113e-02, 5.3896e-03, 1.6728e-03, 5.3588e-04, 1.7621e-04},
       {1.7488, 1.6879, 1.6423, 1.6047}, 0.05, 0.15},
      {1.9, 1.5, 25, kTwoMeshN,
       {1.8030e-01, 5.1088e-02, 1.4906e-02, 4.4824e-03, 1.3882e-03},
       {1.8193, 1.7771, 1.7335, 1.6911}, 0.05, 0.15},
      // r = 2; the alpha = 1.5, N = 256 cell is garbled in the source data
      // (a dropped leading digit) and is skipped by every checker.
      {1.1, 2.0, 25, kTwoMeshN,
       {2.2028e-03, 5.6130e-04, 1.4248e-04, 3.5994e-05, 9.0601e-06},
       {1.9725, 1.9780, 1.9849, 1.9902}, 0.05, 0.15},
      {1.5, 2.0, 25, kTwoMeshN,
       {1.8519e-02, 4.6949e-03, 1.2080e-03, kNaN, 7.9682e-05},
       {1.9798, 1.9584, 1.9586, 1.9637}, 0.05, 0.15},
      {1.9, 2.0, 25, kTwoMeshN,
       {1.9796e-01, 5.0357e-02, 1.2767e-02, 3.2349e-03, 8.1944e-04},
       {1.9749, 1.9798, 1.9806, 1.9810}, 0.05, 0.15},
  };
  return t;
}

}  // namespace fsg::reference
