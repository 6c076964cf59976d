// Reference histogram columns, row = step count.
#pragma once

#include <cstdint>
#include <map>

namespace reference {

using Column = std::map<std::uint64_t, std::uint64_t>;

// Left distributivity.
inline const Column kAcDepth6 = {{0, 67},  {1, 205}, {2, 271}, {3, 388},
                                 {4, 533}, {5, 454}, {6, 63},  {7, 21},
                                 {8, 11},  {9, 2},   {10, 1}};

inline const Column kAcDepth7 = {
    {0, 232},   {1, 845},   {2, 1335},  {3, 2295}, {4, 3697}, {5, 4678},
    {6, 4101},  {7, 939},   {8, 373},   {9, 318},  {10, 122}, {11, 65},
    {12, 73},   {13, 18},   {14, 6},    {15, 10},  {18, 1},   {19, 1},
    {21, 1}};

// Row 0 is the number of prefix pairs, 804 (often quoted as 806).
inline const Column kAcDepth8 = {
    {0, 804},    {1, 3399},   {2, 6430},   {3, 12387},  {4, 22771},
    {5, 35279},  {6, 43429},  {7, 38711},  {8, 11668},  {9, 6501},
    {10, 5071},  {11, 2634},  {12, 2003},  {13, 1303},  {14, 986},
    {15, 441},   {16, 229},   {17, 248},   {18, 103},   {19, 141},
    {20, 76},    {21, 154},   {22, 46},    {23, 31},    {24, 24},
    {25, 10},    {26, 29},    {27, 11},    {28, 4},     {29, 33},
    {30, 8},     {34, 1},     {36, 1},     {38, 1},     {39, 1},
    {41, 1},     {42, 1},     {43, 2},     {44, 2},     {46, 1},
    {48, 2},     {50, 7},     {51, 1},     {52, 6},     {56, 1},
    {58, 1},     {59, 1},     {60, 1},     {61, 2},     {78, 1},
    {473, 1},    {1831, 1}};

// Central duplication.
inline const Column kBcDepth7 = {
    {0, 232},  {1, 812},  {2, 1700}, {3, 2887}, {4, 4012}, {5, 4077},
    {6, 3493}, {7, 845},  {8, 549},  {9, 262},  {10, 143}, {11, 61},
    {12, 22},  {13, 9},   {14, 3},   {15, 2},   {16, 1}};

// Row 0 as above.
inline const Column kBcDepth8 = {
    {0, 804},    {1, 3228},   {2, 7882},   {3, 16503},  {4, 27822},
    {5, 37765},  {6, 37709},  {7, 32400},  {8, 11864},  {9, 8052},
    {10, 4767},  {11, 2899},  {12, 1495},  {13, 846},   {14, 442},
    {15, 226},   {16, 129},   {17, 80},    {18, 36},    {19, 25},
    {20, 15},    {21, 5},     {22, 3},     {23, 1},     {24, 1},
    {25, 1}};

inline constexpr std::uint64_t kQuotedRow0Depth8 = 806;

// Cumulative term counts N for d = 3..9 (7: 197 is quoted, Σ(7) = 19110
// forces 196).
inline const std::map<std::size_t, std::uint64_t> kTermCounts = {
    {3, 3}, {4, 8}, {5, 22}, {6, 64}, {7, 196}, {8, 625}, {9, 2055}};

inline const std::map<std::size_t, std::uint64_t> kPairCounts = {
    {3, 3}, {4, 28}, {5, 231}, {6, 2016}, {7, 19110}, {8, 195000}};

}  // namespace reference
