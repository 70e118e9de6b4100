// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/core/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

namespace gsav {

namespace {

int g_thread_count = static_cast<int>(std::thread::hardware_concurrency());

// A lazily created pool of persistent workers. Tasks are ranges of chunk
// indices; workers claim chunks through an atomic counter, so scheduling
// never influences which chunk computes what.
class Pool {
  public:
    explicit Pool(int workers) {
        for (int i = 0; i < workers; ++i) {
            threads_.emplace_back([this] { worker(); });
        }
    }

    ~Pool() {
        {
            std::unique_lock lock(mutex_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(std::int64_t chunks, const std::function<void(std::int64_t)>& body) {
        if (chunks <= 0) return;
        {
            std::unique_lock lock(mutex_);
            body_ = &body;
            next_.store(0);
            remaining_.store(chunks);
            total_ = chunks;
        }
        cv_.notify_all();
        // The caller participates too.
        drain();
        std::unique_lock lock(done_mutex_);
        done_cv_.wait(lock, [this] { return remaining_.load() == 0; });
        {
            std::unique_lock l2(mutex_);
            body_ = nullptr;
        }
    }

    int size() const { return static_cast<int>(threads_.size()); }

  private:
    void drain() {
        const std::function<void(std::int64_t)>* body = body_;
        if (!body) return;
        while (true) {
            std::int64_t c = next_.fetch_add(1);
            if (c >= total_) break;
            (*body)(c);
            if (remaining_.fetch_sub(1) == 1) {
                std::unique_lock lock(done_mutex_);
                done_cv_.notify_all();
            }
        }
    }

    void worker() {
        while (true) {
            {
                std::unique_lock lock(mutex_);
                cv_.wait(lock, [this] { return stop_ || (body_ && next_.load() < total_); });
                if (stop_) return;
            }
            drain();
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::mutex done_mutex_;
    std::condition_variable done_cv_;
    const std::function<void(std::int64_t)>* body_ = nullptr;
    std::atomic<std::int64_t> next_{0};
    std::atomic<std::int64_t> remaining_{0};
    std::int64_t total_ = 0;
    bool stop_ = false;
};

std::unique_ptr<Pool> g_pool;
std::mutex g_pool_mutex;

Pool* pool() {
    std::unique_lock lock(g_pool_mutex);
    int extra = g_thread_count - 1;  // caller thread also works
    if (extra < 0) extra = 0;
    if (!g_pool || g_pool->size() != extra) {
        g_pool.reset();
        g_pool = std::make_unique<Pool>(extra);
    }
    return g_pool.get();
}

}  // namespace

void set_thread_count(int n) {
    std::unique_lock lock(g_pool_mutex);
    g_thread_count = n < 1 ? 1 : n;
    g_pool.reset();
}

int thread_count() { return g_thread_count < 1 ? 1 : g_thread_count; }

std::int64_t chunk_count(std::int64_t n, std::int64_t chunk_size) {
    if (n <= 0) return 0;
    if (chunk_size < 1) chunk_size = 1;
    return (n + chunk_size - 1) / chunk_size;
}

void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& f) {
    if (n <= 0) return;
    if (chunk_size < 1) chunk_size = 1;
    const std::int64_t chunks = chunk_count(n, chunk_size);
    if (chunks == 1 || thread_count() == 1) {
        for (std::int64_t c = 0; c < chunks; ++c) {
            const std::int64_t b = c * chunk_size;
            const std::int64_t e = std::min(n, b + chunk_size);
            f(c, b, e);
        }
        return;
    }
    auto body = [&](std::int64_t c) {
        const std::int64_t b = c * chunk_size;
        const std::int64_t e = std::min(n, b + chunk_size);
        f(c, b, e);
    };
    pool()->run(chunks, body);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f) {
    // Chunk size depends only on n so output layout is schedule-free.
    std::int64_t chunk = n / 64;
    if (chunk < 16) chunk = 16;
    parallel_chunks(n, chunk, [&](std::int64_t, std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) f(i);
    });
}

}  // namespace gsav
