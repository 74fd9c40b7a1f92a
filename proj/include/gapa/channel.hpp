#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>

namespace gapa {

// Minimal blocking MPSC queue used for all coordinator/worker traffic.
// Workers own population slices between barriers; everything else moves
// through messages, never shared mutable state.
template <typename T>
class Channel {
public:
    void send(T message) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            queue_.push_back(std::move(message));
        }
        ready_.notify_one();
    }

    T receive() {
        std::unique_lock<std::mutex> lock(mutex_);
        ready_.wait(lock, [&] { return !queue_.empty(); });
        T message = std::move(queue_.front());
        queue_.pop_front();
        return message;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<T> queue_;
};

}  // namespace gapa
