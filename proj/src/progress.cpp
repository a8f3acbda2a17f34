#include "abcmeta/progress.hpp"

#include <algorithm>
#include <cstdio>

namespace abcmeta {

ProgressBar::ProgressBar(std::ostream& os, bool enabled,
                         std::chrono::milliseconds min_interval, Clock clock)
    : os_(os),
      enabled_(enabled),
      interval_(min_interval),
      clock_(std::move(clock)) {
    if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

void ProgressBar::set_label(std::string label) {
    if (line_open_) finish();
    label_ = std::move(label);
    final_drawn_ = false;
    have_last_ = false;
}

void ProgressBar::update(double fraction, std::uint64_t iters_done) {
    if (!enabled_ || final_drawn_) return;
    fraction = std::clamp(fraction, 0.0, 1.0);
    const bool final = fraction >= 1.0;
    const auto now = clock_();
    if (!final && have_last_ && now - last_ < interval_) return;
    last_ = now;
    have_last_ = true;
    draw(fraction, iters_done);
    if (final) final_drawn_ = true;
}

void ProgressBar::draw(double fraction, std::uint64_t iters_done) {
    constexpr int kWidth = 28;
    const int filled = static_cast<int>(fraction * kWidth + 0.5);
    char pct[16];
    std::snprintf(pct, sizeof(pct), "%5.1f%%", fraction * 100.0);
    os_ << '\r';
    if (!label_.empty()) os_ << label_ << ' ';
    os_ << '[';
    for (int i = 0; i < kWidth; ++i) os_ << (i < filled ? '#' : '-');
    os_ << "] " << pct << " (" << iters_done << ")";
    os_.flush();
    ++frames_;
    line_open_ = true;
}

void ProgressBar::finish() {
    if (line_open_) {
        os_ << '\n';
        os_.flush();
        line_open_ = false;
    }
}

}  // namespace abcmeta
