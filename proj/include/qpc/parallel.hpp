// Copyright 2026 The qpc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPC_PARALLEL_HPP
#define QPC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "qpc/rng.hpp"

namespace qpc {

/// Worker count used when none is requested: hardware concurrency, at least 1.
inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs `trials` independent trials split across workers in contiguous
/// chunks. Trial i always gets Rng::for_trial(seed, i). Each worker fills its
/// own accumulator; they are merged in chunk order with Acc::merge, so an
/// order-insensitive merge (integer counts) gives results that do not depend
/// on the worker count.
template <class Acc, class TrialFn>
Acc run_trials(std::size_t trials, std::uint64_t seed, TrialFn&& trial, unsigned threads = 0) {
    if (threads == 0) {
        threads = default_threads();
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
    std::vector<Acc> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned w) {
        const std::size_t begin = trials * w / threads;
        const std::size_t end = trials * (w + 1) / threads;
        try {
            for (std::size_t i = begin; i < end; ++i) {
                Rng rng = Rng::for_trial(seed, i);
                trial(rng, i, partial[w]);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    Acc total = std::move(partial[0]);
    for (unsigned w = 1; w < threads; ++w) {
        total.merge(partial[w]);
    }
    return total;
}

/// Hit counter for proportion estimates.
struct HitCount {
    std::size_t hits = 0;
    std::size_t trials = 0;

    void merge(const HitCount& o) {
        hits += o.hits;
        trials += o.trials;
    }
};

}  // namespace qpc

#endif  // QPC_PARALLEL_HPP
