#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ctxdiv/anchor.hpp"

namespace ctxdiv {

enum class SegmentStatus { pending, processed };

/// Segments that occur in two or more intents, with their node lists cached
/// after the first resolution.
///
/// A cached list is computed at most once: concurrent requesters for the same
/// key either see the published list or wait for the single computation.
class SharedSegmentTable {
public:
    struct Entry {
        std::once_flag once;
        std::atomic<SegmentStatus> status{SegmentStatus::pending};
        Segment cached;
        /// Intents containing the segment that have not completed yet.
        std::size_t uses = 0;
        std::atomic<std::size_t> computations{0};
    };

    SharedSegmentTable() = default;
    SharedSegmentTable(const SharedSegmentTable&) = delete;
    SharedSegmentTable& operator=(const SharedSegmentTable&) = delete;

    /// Registers every segment key occurring in at least two intents.
    static std::unique_ptr<SharedSegmentTable> plan(std::span<const IntentQuery> intents);

    [[nodiscard]] bool contains(const SegmentKey& key) const;
    /// nullptr when the key is not shared or has been evicted.
    [[nodiscard]] const Entry* find(const SegmentKey& key) const;
    [[nodiscard]] std::size_t size() const;

    /// Resolves `key`, through the cache when it is shared. Counts one
    /// posting-list read per list touched by an actual resolution.
    Segment fetch(const SegmentKey& key, const IndexBundle& index);

    /// Marks one consumer of each shared segment of `intent` as done and
    /// evicts entries nobody needs any more. Driver thread only.
    void release(const IntentQuery& intent);

    [[nodiscard]] std::size_t posting_reads() const noexcept { return posting_reads_.load(); }

    /// Recomputes every cache hit and throws std::logic_error on mismatch.
    void set_verify(bool verify) noexcept { verify_ = verify; }

private:
    Segment resolve_counted(const SegmentKey& key, const IndexBundle& index);

    mutable std::mutex mutex_;
    std::map<SegmentKey, std::unique_ptr<Entry>> entries_;
    std::atomic<std::size_t> posting_reads_{0};
    bool verify_ = false;
};

/// Fixed set of threads that run batches of tasks; task i of a batch goes to
/// worker i mod N. run() returns once every task of the batch has finished.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    [[nodiscard]] std::size_t size() const noexcept { return threads_.size(); }

    /// Rethrows the first exception raised by a task.
    void run(std::size_t tasks, const std::function<void(std::size_t task)>& body);

    /// Worker that task `task` is assigned to.
    [[nodiscard]] std::size_t worker_of(std::size_t task) const noexcept { return task % threads_.size(); }

private:
    void loop(std::size_t worker);

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* body_ = nullptr;
    std::size_t tasks_ = 0;
    std::size_t generation_ = 0;
    std::size_t running_ = 0;
    bool stopping_ = false;
    std::exception_ptr failure_;
};

struct WorkPlan {
    /// Surviving areas of one intent, in document order.
    std::vector<Area> areas;
    /// assignment[i] is the worker evaluating areas[i].
    std::vector<std::size_t> assignment;
};

WorkPlan make_work_plan(std::vector<Area> areas, std::size_t workers);

/// Anchored evaluation with segments resolved and areas evaluated across a
/// worker pool. Partial results are concatenated in area order, so the outcome
/// does not depend on the number of workers.
class ParallelEvaluator final : public IntentEvaluator {
public:
    ParallelEvaluator(const IndexBundle& index, std::span<const IntentQuery> intents, std::size_t workers);

    IntentOutcome evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats) override;
    void completed(const IntentQuery& intent) override;

    [[nodiscard]] SharedSegmentTable& table() noexcept { return *table_; }
    [[nodiscard]] std::size_t workers() const noexcept { return pool_.size(); }

private:
    const IndexBundle& index_;
    std::unique_ptr<SharedSegmentTable> table_;
    WorkerPool pool_;
};

/// Throws std::invalid_argument for workers < 1.
SearchResult diversify_parallel(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index, std::size_t workers);

} // namespace ctxdiv
