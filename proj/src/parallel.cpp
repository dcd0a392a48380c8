#include "ctxdiv/parallel.hpp"

#include <stdexcept>
#include <utility>

namespace ctxdiv {

std::unique_ptr<SharedSegmentTable> SharedSegmentTable::plan(std::span<const IntentQuery> intents)
{
    std::map<SegmentKey, std::size_t> counts;
    for (const auto& intent : intents) {
        for (const auto& key : intent.segments) {
            ++counts[key];
        }
    }
    auto table = std::make_unique<SharedSegmentTable>();
    for (const auto& [key, count] : counts) {
        if (count >= 2) {
            auto entry = std::make_unique<Entry>();
            entry->uses = count;
            table->entries_.emplace(key, std::move(entry));
        }
    }
    return table;
}

bool SharedSegmentTable::contains(const SegmentKey& key) const
{
    return find(key) != nullptr;
}

const SharedSegmentTable::Entry* SharedSegmentTable::find(const SegmentKey& key) const
{
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : it->second.get();
}

std::size_t SharedSegmentTable::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

Segment SharedSegmentTable::resolve_counted(const SegmentKey& key, const IndexBundle& index)
{
    posting_reads_ += key.bare() ? 1 : 2;
    return resolve_segment(key, index);
}

Segment SharedSegmentTable::fetch(const SegmentKey& key, const IndexBundle& index)
{
    Entry* entry = nullptr;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            entry = it->second.get();
        }
    }
    if (entry == nullptr) {
        return resolve_counted(key, index);
    }

    bool computed_here = false;
    std::call_once(entry->once, [&] {
        entry->cached = resolve_counted(key, index);
        ++entry->computations;
        entry->status.store(SegmentStatus::processed, std::memory_order_release);
        computed_here = true;
    });
    if (verify_ && !computed_here) {
        auto fresh = resolve_segment(key, index);
        if (fresh.node_list != entry->cached.node_list || fresh.feature_list_size != entry->cached.feature_list_size) {
            throw std::logic_error("cached segment differs from recomputation: " + key.keyword + "/" + key.feature);
        }
    }
    return entry->cached;
}

void SharedSegmentTable::release(const IntentQuery& intent)
{
    std::lock_guard lock(mutex_);
    for (const auto& key : intent.segments) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            continue;
        }
        if (--it->second->uses == 0) {
            entries_.erase(it);
        }
    }
}

WorkerPool::WorkerPool(std::size_t workers)
{
    if (workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    threads_.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads_.emplace_back([this, w] { loop(w); });
    }
}

WorkerPool::~WorkerPool()
{
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    for (auto& thread : threads_) {
        thread.join();
    }
}

void WorkerPool::run(std::size_t tasks, const std::function<void(std::size_t)>& body)
{
    if (tasks == 0) {
        return;
    }
    std::unique_lock lock(mutex_);
    body_ = &body;
    tasks_ = tasks;
    failure_ = nullptr;
    running_ = threads_.size();
    ++generation_;
    wake_.notify_all();
    done_.wait(lock, [this] { return running_ == 0; });
    body_ = nullptr;
    if (failure_) {
        std::rethrow_exception(std::exchange(failure_, nullptr));
    }
}

void WorkerPool::loop(std::size_t worker)
{
    std::size_t seen = 0;
    for (;;) {
        const std::function<void(std::size_t)>* body = nullptr;
        std::size_t tasks = 0;
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_) {
                return;
            }
            seen = generation_;
            body = body_;
            tasks = tasks_;
        }

        std::exception_ptr failure;
        try {
            for (std::size_t task = worker; task < tasks; task += threads_.size()) {
                (*body)(task);
            }
        } catch (...) {
            failure = std::current_exception();
        }

        std::lock_guard lock(mutex_);
        if (failure && !failure_) {
            failure_ = failure;
        }
        if (--running_ == 0) {
            done_.notify_one();
        }
    }
}

WorkPlan make_work_plan(std::vector<Area> areas, std::size_t workers)
{
    if (workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    WorkPlan plan;
    plan.assignment.reserve(areas.size());
    for (std::size_t i = 0; i < areas.size(); ++i) {
        plan.assignment.push_back(i % workers);
    }
    plan.areas = std::move(areas);
    return plan;
}

ParallelEvaluator::ParallelEvaluator(const IndexBundle& index, std::span<const IntentQuery> intents,
                                     std::size_t workers)
    : index_(index), table_(SharedSegmentTable::plan(intents)), pool_(workers)
{
}

IntentOutcome ParallelEvaluator::evaluate(const IntentQuery& intent, const DiversifiedSet& phi, EvalStats& stats)
{
    std::vector<Segment> segments(intent.segments.size());
    pool_.run(segments.size(), [&](std::size_t i) { segments[i] = table_->fetch(intent.segments[i], index_); });

    std::vector<NodeList> lists;
    lists.reserve(segments.size());
    for (const auto& segment : segments) {
        lists.push_back(segment.node_list);
    }

    auto runner = [this](std::span<const Area> areas, std::span<const DeweyId> anchors, std::span<SlcaSet> out) {
        pool_.run(areas.size(), [&](std::size_t i) { out[i] = evaluate_area(areas[i], anchors); });
    };
    return evaluate_with_anchors(lists, likelihood(segments), phi, stats, runner);
}

void ParallelEvaluator::completed(const IntentQuery& intent)
{
    table_->release(intent);
}

SearchResult diversify_parallel(const std::vector<std::string>& keywords, const SearchParams& params,
                                const IndexBundle& index, std::size_t workers)
{
    if (workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    auto intents = plan_intents(keywords, params, index);
    ParallelEvaluator evaluator(index, intents, workers);
    return run_diversification(intents, params.k, evaluator);
}

} // namespace ctxdiv
