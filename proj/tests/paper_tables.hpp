#pragma once

// Published max-error tables, dx = 2^-l for l = 3..10, T = 1.
// orders[i][k] is the printed order at level 4 + k.

#include <array>
#include <string>
#include <vector>

namespace golden {

struct Column {
    double nu;
    std::array<double, 8> errors;
    std::array<double, 7> orders;
};

struct Table {
    std::string name;
    std::string problem;
    std::vector<Column> columns;
};

inline const Table table1{
    "table1", "example1",
    {{0.3,
      {1.6782e-3, 2.7683e-4, 4.3876e-5, 6.8430e-6, 1.0596e-6, 1.6356e-7, 2.5195e-8, 3.8778e-9},
      {2.5998, 2.6575, 2.6807, 2.6910, 2.6957, 2.6986, 2.6998}},
     {0.5,
      {5.8967e-3, 1.1467e-3, 2.1076e-4, 3.7908e-5, 6.7551e-6, 1.1986e-6, 2.1228e-7, 3.7565e-8},
      {2.3623, 2.4438, 2.4750, 2.4884, 2.4945, 2.4974, 2.4985}},
     {0.8,
      {2.3580e-2, 5.8213e-3, 1.3329e-3, 2.9674e-4, 6.5272e-5, 1.4278e-5, 3.1153e-6, 6.7888e-7},
      {2.0181, 2.1267, 2.1673, 2.1846, 2.1926, 2.1963, 2.1981}},
     {0.99,
      {4.7431e-2, 1.3486e-2, 3.5413e-3, 9.0195e-4, 2.2667e-4, 5.6613e-5, 1.4096e-5, 3.5049e-6},
      {1.8143, 1.9291, 1.9731, 1.9924, 2.0014, 2.0057, 2.0078}}}};

inline const Table table2{
    "table2", "example2-linear",
    {{0.3,
      {8.9242e-4, 1.4371e-4, 2.2556e-5, 3.5029e-6, 5.4140e-7, 8.3492e-8, 1.2854e-8, 1.9781e-9},
      {2.6345, 2.6715, 2.6868, 2.6937, 2.6969, 2.6993, 2.7000}},
     {0.5,
      {3.4577e-3, 6.5136e-4, 1.1826e-4, 2.1163e-5, 3.7628e-6, 6.6703e-7, 1.1806e-7, 2.0887e-8},
      {2.4083, 2.4614, 2.4824, 2.4916, 2.4959, 2.4981, 2.4989}},
     {0.8,
      {1.6357e-2, 3.9150e-3, 8.8578e-4, 1.9621e-4, 4.3066e-5, 9.4114e-6, 2.0524e-6, 4.4715e-7},
      {2.0628, 2.1439, 2.1744, 2.1878, 2.1940, 2.1970, 2.1984}},
     {0.99,
      {3.6070e-2, 1.0036e-2, 2.6115e-3, 6.6251e-4, 1.6619e-4, 4.1471e-5, 1.0322e-5, 2.5659e-6},
      {1.8455, 1.9422, 1.9788, 1.9950, 2.0026, 2.0063, 2.0081}}}};

inline const Table table3{
    "table3", "example2-nonlinear",
    {{0.3,
      {9.1405e-4, 1.6188e-4, 2.6226e-5, 4.1349e-6, 6.4327e-7, 9.9504e-8, 1.5350e-8, 2.3643e-9},
      {2.4972, 2.6258, 2.6651, 2.6843, 2.6926, 2.6964, 2.6987}},
     {0.5,
      {3.2126e-3, 6.4829e-4, 1.2091e-4, 2.1873e-5, 3.9072e-6, 6.9413e-7, 1.2299e-7, 2.1774e-8},
      {2.3090, 2.4226, 2.4667, 2.4849, 2.4928, 2.4965, 2.4978}},
     {0.8,
      {1.5357e-2, 3.8037e-3, 8.7214e-4, 1.9417e-4, 4.2704e-5, 9.3407e-6, 2.0379e-6, 4.4407e-7},
      {2.0134, 2.1247, 2.1672, 2.1848, 2.1927, 2.1964, 2.1982}},
     {0.99,
      {3.4906e-2, 1.0094e-2, 2.6623e-3, 6.7852e-4, 1.7050e-4, 4.2578e-5, 1.0600e-5, 2.6356e-6},
      {1.7898, 1.9228, 1.9722, 1.9925, 2.0016, 2.0059, 2.0079}}}};

// f = -y, y(0) = 1
inline const Table table4{
    "table4", "example3",
    {{0.3,
      {3.2510e-3, 2.8864e-3, 2.5263e-3, 2.1840e-3, 1.8684e-3, 1.5842e-3, 1.3332e-3, 1.1150e-3},
      {0.1716, 0.1922, 0.2100, 0.2252, 0.2380, 0.2488, 0.2578}},
     {0.6,
      {8.8351e-4, 6.6298e-4, 4.6140e-4, 3.1026e-4, 2.0569e-4, 1.3568e-4, 8.9370e-5, 5.8861e-5},
      {0.4143, 0.5229, 0.5725, 0.5930, 0.6003, 0.6023, 0.6025}},
     {0.9,
      {2.1988e-3, 9.7373e-4, 4.5730e-4, 2.2952e-4, 1.2005e-4, 6.3888e-5, 3.4223e-5, 1.8362e-5},
      {1.1751, 1.0903, 0.9945, 0.9350, 0.9100, 0.9006, 0.8982}},
     {1.0,
      {3.8804e-4, 2.9709e-4, 9.7657e-5, 2.7213e-5, 7.1461e-6, 1.8289e-6, 4.6252e-7, 1.1628e-7},
      {0.3853, 1.6051, 1.8434, 1.9290, 1.9661, 1.9834, 1.9918}}}};

// f = -y with starting weights sigma_k = k nu
inline const Table table5{
    "table5", "example3",
    {{0.3,
      {2.4932e-6, 8.5679e-7, 2.8365e-7, 9.0097e-8, 2.7462e-8, 8.0536e-9, 2.2805e-9, 6.2613e-10},
      {1.5409, 1.5947, 1.6546, 1.7140, 1.7697, 1.8202, 1.8648}},
     {0.6,
      {4.2141e-5, 1.7729e-5, 5.0652e-6, 1.2249e-6, 2.7037e-7, 5.6509e-8, 1.1354e-8, 2.5311e-9},
      {1.2491, 1.8074, 2.0479, 2.1796, 2.2583, 2.3152, 2.1654}},
     {0.9,
      {1.2940e-4, 7.0189e-5, 2.3691e-5, 6.6215e-6, 1.6940e-6, 4.1466e-7, 9.9291e-8, 2.3508e-8},
      {0.88254, 1.5668, 1.8391, 1.9667, 2.0304, 2.0622, 2.0785}}}};

}  // namespace golden
