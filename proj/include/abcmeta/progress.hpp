#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace abcmeta {

// Terminal progress bar fed by engine progress callbacks. Redraws at most
// once per min_interval; the final (fraction == 1) frame is always drawn.
// When disabled, update() is a no-op. The clock is injectable for tests.
class ProgressBar {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    ProgressBar(std::ostream& os, bool enabled,
                std::chrono::milliseconds min_interval =
                    std::chrono::milliseconds(100),
                Clock clock = {});

    void set_label(std::string label);
    void update(double fraction, std::uint64_t iters_done);
    // Terminates the bar line, if any frame was drawn.
    void finish();

    std::uint64_t frames_drawn() const noexcept { return frames_; }

private:
    void draw(double fraction, std::uint64_t iters_done);

    std::ostream& os_;
    bool enabled_;
    std::chrono::milliseconds interval_;
    Clock clock_;
    std::string label_;
    std::uint64_t frames_ = 0;
    bool line_open_ = false;
    bool final_drawn_ = false;
    bool have_last_ = false;
    std::chrono::steady_clock::time_point last_{};
};

}  // namespace abcmeta
