// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qthermo::detail {

/// Runs body(i) for i in [0, n) on up to `threads` workers. If any call
/// throws, the exception from the lowest index is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body &&body) {
    std::vector<std::exception_ptr> errors(n);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    auto run = [&](unsigned worker) {
        for (std::size_t i = worker; i < n; i += workers) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto &t : pool) t.join();
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace qthermo::detail
