/*
 * Copyright 2026 The passgi Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Subset sum by backtracking: counts the subsets of a fixed weight set that
 * add up to a target. Small enough to compile in well under a second and
 * slow enough that optimization passes make a measurable difference.
 *
 * Usage: subset_sum [target]
 */
#include <stdio.h>
#include <stdlib.h>

#define N 26

static const int weights[N] = {
    3,  34, 4,  12, 5,  2,  27, 19, 8,  41, 15, 23, 7,
    31, 11, 17, 29, 6,  13, 37, 21, 9,  25, 14, 33, 10,
};

static long solutions;

static void search(int index, int sum, int remaining, int target) {
  if (sum == target) {
    ++solutions;
    return;
  }
  if (index == N || sum > target || sum + remaining < target) return;
  /* Take weights[index]. */
  search(index + 1, sum + weights[index], remaining - weights[index], target);
  /* Skip it. */
  search(index + 1, sum, remaining - weights[index], target);
}

int main(int argc, char** argv) {
  int target = argc > 1 ? atoi(argv[1]) : 150;
  int total = 0;
  for (int i = 0; i < N; ++i) total += weights[i];
  if (target < 0 || target > total) {
    fprintf(stderr, "target out of range\n");
    return 1;
  }
  search(0, 0, total, target);
  printf("subsets summing to %d: %ld\n", target, solutions);
  return 0;
}
