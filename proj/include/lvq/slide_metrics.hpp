// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

// Fraction of the page covered by text boxes and by image boxes. Boxes are
// clipped to the page; overlaps are not deduplicated, so a crowded page can
// exceed 1.
struct SlideRatioPair {
    double text_ratio = 0.0;
    double image_ratio = 0.0;
};

namespace detail {

inline double clipped_area(double x, double y, double w, double h, double W, double H) {
    const double x0 = std::max(0.0, x);
    const double y0 = std::max(0.0, y);
    const double x1 = std::min(W, x + w);
    const double y1 = std::min(H, y + h);
    return std::max(0.0, x1 - x0) * std::max(0.0, y1 - y0);
}

} // namespace detail

inline SlideRatioPair slide_ratios(const SlideLayout& slide) {
    if (slide.width <= 0 || slide.height <= 0)
        throw ValidationError("slide ratios: page dimensions must be positive");
    const double page = slide.width * slide.height;
    SlideRatioPair r;
    for (const TextBox& b : slide.text)
        r.text_ratio += detail::clipped_area(b.x, b.y, b.w, b.h, slide.width, slide.height);
    for (const ImageBox& b : slide.images)
        r.image_ratio += detail::clipped_area(b.x, b.y, b.w, b.h, slide.width, slide.height);
    r.text_ratio /= page;
    r.image_ratio /= page;
    return r;
}

// Deck-level mean and unbiased variance of the per-slide ratios.
struct SlideRatios {
    double text_ratio_avg = 0.0;
    double text_ratio_var = 0.0;
    double image_ratio_avg = 0.0;
    double image_ratio_var = 0.0;
};

inline SlideRatios deck_ratios(const std::vector<SlideLayout>& slides) {
    if (slides.empty()) throw InsufficientDataError("deck ratios: no slides");
    std::vector<double> text, image;
    for (const SlideLayout& s : slides) {
        const SlideRatioPair r = slide_ratios(s);
        text.push_back(r.text_ratio);
        image.push_back(r.image_ratio);
    }
    SlideRatios out;
    std::tie(out.text_ratio_avg, out.text_ratio_var) = mean_and_sample_variance(text);
    std::tie(out.image_ratio_avg, out.image_ratio_var) = mean_and_sample_variance(image);
    return out;
}

// A text line rebuilt from word boxes.
struct SlideLine {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    std::vector<const TextBox*> words;

    double area() const { return (x1 - x0) * (y1 - y0); }
};

// Groups word boxes into lines: a box joins a line when their vertical
// overlap covers at least half of the shorter of the two heights.
inline std::vector<SlideLine> merge_lines(const SlideLayout& slide) {
    std::vector<const TextBox*> boxes;
    for (const TextBox& b : slide.text)
        if (!trim(b.text).empty()) boxes.push_back(&b);
    std::stable_sort(boxes.begin(), boxes.end(), [](const TextBox* a, const TextBox* b) {
        if (a->y != b->y) return a->y < b->y;
        return a->x < b->x;
    });

    std::vector<SlideLine> lines;
    for (const TextBox* b : boxes) {
        SlideLine* target = nullptr;
        for (SlideLine& line : lines) {
            const double overlap = std::min(line.y1, b->y + b->h) - std::max(line.y0, b->y);
            const double smaller = std::min(line.y1 - line.y0, b->h);
            if (overlap >= 0.5 * smaller && smaller > 0.0) {
                target = &line;
                break;
            }
        }
        if (target == nullptr) {
            lines.push_back(SlideLine{b->x, b->y, b->x + b->w, b->y + b->h, {b}});
        } else {
            target->x0 = std::min(target->x0, b->x);
            target->y0 = std::min(target->y0, b->y);
            target->x1 = std::max(target->x1, b->x + b->w);
            target->y1 = std::max(target->y1, b->y + b->h);
            target->words.push_back(b);
        }
    }
    for (SlideLine& line : lines)
        std::stable_sort(line.words.begin(), line.words.end(),
                         [](const TextBox* a, const TextBox* b) { return a->x < b->x; });
    return lines;
}

// Text the audience is meant to notice: lines are sorted by box area and
// walked in descending order, starting a new cluster whenever the drop
// between consecutive areas exceeds gap_ratio of the page area. The first
// two clusters win.
struct ImportantText {
    std::vector<std::string> lines;
};

inline ImportantText important_text(const SlideLayout& slide, double gap_ratio = 0.01) {
    if (slide.width <= 0 || slide.height <= 0)
        throw ValidationError("important text: page dimensions must be positive");
    if (!(gap_ratio > 0))
        throw ValidationError("important text: gap ratio must be positive");

    std::vector<SlideLine> lines = merge_lines(slide);
    ImportantText out;
    if (lines.empty()) return out;

    std::vector<std::size_t> order(lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&lines](std::size_t a, std::size_t b) {
        return lines[a].area() > lines[b].area();
    });

    const double gap_limit = gap_ratio * slide.width * slide.height;
    std::vector<std::size_t> kept;
    int cluster = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && lines[order[i - 1]].area() - lines[order[i]].area() > gap_limit) {
            ++cluster;
            if (cluster >= 2) break;
        }
        kept.push_back(order[i]);
    }
    std::sort(kept.begin(), kept.end()); // back to reading order

    for (std::size_t idx : kept) {
        std::string text;
        for (const TextBox* w : lines[idx].words) {
            if (!text.empty()) text += ' ';
            text += trim(w->text);
        }
        out.lines.push_back(std::move(text));
    }
    return out;
}

} // namespace lvq
