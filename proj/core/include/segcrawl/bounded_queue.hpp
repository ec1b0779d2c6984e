#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>

namespace segcrawl {

/// Blocking multi-producer/multi-consumer FIFO with a hard capacity.
///
/// Producers block in push() while the queue is full; consumers block in pop()
/// while it is empty. close() wakes everyone: further pushes are rejected and
/// pop() keeps returning items until the queue is drained, then nullopt.
/// peak() is the highest occupancy ever observed after a push.
template <typename T>
class BoundedQueue {
public:
    explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {
        if (capacity_ == 0) throw std::invalid_argument("BoundedQueue capacity must be >= 1");
    }

    BoundedQueue(const BoundedQueue&) = delete;
    BoundedQueue& operator=(const BoundedQueue&) = delete;

    /// Returns false (and drops the item) if the queue was closed.
    bool push(T item) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
        if (closed_) return false;
        items_.push_back(std::move(item));
        if (items_.size() > peak_) peak_ = items_.size();
        lock.unlock();
        not_empty_.notify_one();
        return true;
    }

    /// Blocks until an item is available or the queue is closed and drained.
    std::optional<T> pop() {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
        if (items_.empty()) return std::nullopt;
        T item = std::move(items_.front());
        items_.pop_front();
        lock.unlock();
        not_full_.notify_one();
        return item;
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        not_full_.notify_all();
        not_empty_.notify_all();
    }

    std::size_t capacity() const noexcept { return capacity_; }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return items_.size();
    }

    std::size_t peak() const {
        std::lock_guard lock(mutex_);
        return peak_;
    }

    bool closed() const {
        std::lock_guard lock(mutex_);
        return closed_;
    }

private:
    const std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<T> items_;
    std::size_t peak_ = 0;
    bool closed_ = false;
};

}  // namespace segcrawl
