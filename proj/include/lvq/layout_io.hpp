// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvq/error.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"
#include "lvq/xmlmini.hpp"

namespace lvq {

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) throw FormatError(path + ": expected number");
    return j.get<double>();
}

inline const nlohmann::json& json_member(const nlohmann::json& j, const char* key,
                                         const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(path + "." + key + ": missing");
    return *it;
}

} // namespace detail

// Parses the canonical slide-layout JSON document.
inline std::vector<SlideLayout> parse_slide_layouts(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("$: ") + e.what());
    }
    if (!root.is_object()) throw FormatError("$: expected object");
    const auto& slides = detail::json_member(root, "slides", "$");
    if (!slides.is_array()) throw FormatError("$.slides: expected array");

    std::vector<SlideLayout> out;
    int prev_index = 0;
    for (std::size_t i = 0; i < slides.size(); ++i) {
        const std::string sp = "$.slides[" + std::to_string(i) + "]";
        const auto& js = slides[i];
        if (!js.is_object()) throw FormatError(sp + ": expected object");
        SlideLayout slide;
        const auto& jidx = detail::json_member(js, "index", sp);
        if (!jidx.is_number_integer() || jidx.get<long>() < 1)
            throw FormatError(sp + ".index: expected positive integer");
        slide.slide_index = jidx.get<int>();
        slide.width = detail::json_number(detail::json_member(js, "width", sp), sp + ".width");
        slide.height = detail::json_number(detail::json_member(js, "height", sp), sp + ".height");
        if (slide.width <= 0 || slide.height <= 0)
            throw ValidationError(sp + ": page dimensions must be positive");
        if (slide.slide_index <= prev_index)
            throw ValidationError(sp + ".index: indices must be strictly increasing");
        prev_index = slide.slide_index;

        const auto& jtext = detail::json_member(js, "text", sp);
        if (!jtext.is_array()) throw FormatError(sp + ".text: expected array");
        for (std::size_t b = 0; b < jtext.size(); ++b) {
            const std::string bp = sp + ".text[" + std::to_string(b) + "]";
            const auto& jb = jtext[b];
            if (!jb.is_object()) throw FormatError(bp + ": expected object");
            TextBox box;
            box.x = detail::json_number(detail::json_member(jb, "x", bp), bp + ".x");
            box.y = detail::json_number(detail::json_member(jb, "y", bp), bp + ".y");
            box.w = detail::json_number(detail::json_member(jb, "w", bp), bp + ".w");
            box.h = detail::json_number(detail::json_member(jb, "h", bp), bp + ".h");
            const auto& jtextval = detail::json_member(jb, "s", bp);
            if (!jtextval.is_string()) throw FormatError(bp + ".s: expected string");
            box.text = jtextval.get<std::string>();
            if (box.w < 0 || box.h < 0)
                throw ValidationError(bp + ": box extent must be non-negative");
            slide.text.push_back(std::move(box));
        }

        const auto& jimg = detail::json_member(js, "images", sp);
        if (!jimg.is_array()) throw FormatError(sp + ".images: expected array");
        for (std::size_t b = 0; b < jimg.size(); ++b) {
            const std::string bp = sp + ".images[" + std::to_string(b) + "]";
            const auto& jb = jimg[b];
            if (!jb.is_object()) throw FormatError(bp + ": expected object");
            ImageBox box;
            box.x = detail::json_number(detail::json_member(jb, "x", bp), bp + ".x");
            box.y = detail::json_number(detail::json_member(jb, "y", bp), bp + ".y");
            box.w = detail::json_number(detail::json_member(jb, "w", bp), bp + ".w");
            box.h = detail::json_number(detail::json_member(jb, "h", bp), bp + ".h");
            if (box.w < 0 || box.h < 0)
                throw ValidationError(bp + ": box extent must be non-negative");
            slide.images.push_back(box);
        }
        out.push_back(std::move(slide));
    }
    return out;
}

// Serializes a deck as canonical JSON. parse(dump(x)) == x.
inline std::string dump_slide_layouts(const std::vector<SlideLayout>& slides) {
    nlohmann::ordered_json root;
    root["slides"] = nlohmann::ordered_json::array();
    for (const SlideLayout& s : slides) {
        nlohmann::ordered_json js;
        js["index"] = s.slide_index;
        js["width"] = s.width;
        js["height"] = s.height;
        js["text"] = nlohmann::ordered_json::array();
        for (const TextBox& b : s.text) {
            nlohmann::ordered_json jb;
            jb["x"] = b.x;
            jb["y"] = b.y;
            jb["w"] = b.w;
            jb["h"] = b.h;
            jb["s"] = b.text;
            js["text"].push_back(std::move(jb));
        }
        js["images"] = nlohmann::ordered_json::array();
        for (const ImageBox& b : s.images) {
            nlohmann::ordered_json jb;
            jb["x"] = b.x;
            jb["y"] = b.y;
            jb["w"] = b.w;
            jb["h"] = b.h;
            js["images"].push_back(std::move(jb));
        }
        root["slides"].push_back(std::move(js));
    }
    return root.dump(2) + "\n";
}

inline std::vector<SlideLayout> load_slide_layouts(const std::filesystem::path& path) {
    return parse_slide_layouts(read_file(path));
}

// Builds text-only slides from an XHTML word dump: <page width= height=>
// containing <word xMin= yMin= xMax= yMax=>token</word> elements.
inline std::vector<SlideLayout> layout_from_xhtml(const std::string& xhtml) {
    std::vector<SlideLayout> slides;
    bool in_word = false;
    TextBox pending;
    std::string word_text;

    auto require_attr = [](const XmlTag& tag, const char* key, const std::string& where) {
        auto it = tag.attrs.find(key);
        if (it == tag.attrs.end())
            throw FormatError(where + ": missing attribute \"" + std::string(key) + "\"");
        return parse_double(it->second, where + " " + key);
    };

    xml_scan(
        xhtml,
        [&](const XmlTag& tag) {
            if (tag.name == "page") {
                SlideLayout s;
                s.slide_index = static_cast<int>(slides.size()) + 1;
                const std::string where = "page " + std::to_string(s.slide_index);
                s.width = require_attr(tag, "width", where);
                s.height = require_attr(tag, "height", where);
                if (s.width <= 0 || s.height <= 0)
                    throw ValidationError(where + ": page dimensions must be positive");
                slides.push_back(std::move(s));
            } else if (tag.name == "word") {
                if (slides.empty()) throw FormatError("word element outside of any page");
                const std::string where = "page " + std::to_string(slides.back().slide_index) +
                                          " word " + std::to_string(slides.back().text.size() + 1);
                const double x0 = require_attr(tag, "xMin", where);
                const double y0 = require_attr(tag, "yMin", where);
                const double x1 = require_attr(tag, "xMax", where);
                const double y1 = require_attr(tag, "yMax", where);
                if (x1 < x0 || y1 < y0)
                    throw ValidationError(where + ": box extent must be non-negative");
                pending = TextBox{x0, y0, x1 - x0, y1 - y0, ""};
                word_text.clear();
                in_word = !tag.self_closing;
            }
        },
        [&](const std::string& name) {
            if (name == "word") {
                pending.text = trim(word_text);
                if (!pending.text.empty()) slides.back().text.push_back(pending);
                in_word = false;
            }
        },
        [&](const std::string& text) {
            if (in_word) word_text += text;
        });
    return slides;
}

// Adds image boxes from an XML page dump (<page number= width= height=> with
// <image top= left= width= height=/>) onto an existing deck.
inline void merge_images_from_xml(std::vector<SlideLayout>& slides, const std::string& xml) {
    int current = -1; // position in `slides`
    int seen_pages = 0;

    xml_scan(
        xml,
        [&](const XmlTag& tag) {
            if (tag.name == "page") {
                ++seen_pages;
                int number = seen_pages;
                if (auto it = tag.attrs.find("number"); it != tag.attrs.end())
                    number = static_cast<int>(parse_long(it->second, "page number"));
                current = -1;
                for (std::size_t i = 0; i < slides.size(); ++i)
                    if (slides[i].slide_index == number) current = static_cast<int>(i);
                if (current < 0)
                    throw ValidationError("image page " + std::to_string(number) +
                                          " has no matching slide");
            } else if (tag.name == "image") {
                if (current < 0) throw FormatError("image element outside of any page");
                const std::string where = "page " +
                                          std::to_string(slides[current].slide_index) + " image " +
                                          std::to_string(slides[current].images.size() + 1);
                auto attr = [&](const char* key) {
                    auto it = tag.attrs.find(key);
                    if (it == tag.attrs.end())
                        throw FormatError(where + ": missing attribute \"" + std::string(key) +
                                          "\"");
                    return parse_double(it->second, where + " " + key);
                };
                ImageBox box;
                box.x = attr("left");
                box.y = attr("top");
                box.w = attr("width");
                box.h = attr("height");
                if (box.w < 0 || box.h < 0)
                    throw FormatError(where + ": negative width or height");
                slides[current].images.push_back(box);
            }
        },
        nullptr, nullptr);
}

// XHTML words plus XML images to a canonical deck.
inline std::vector<SlideLayout> convert_layout(const std::string& xhtml, const std::string& xml) {
    std::vector<SlideLayout> slides = layout_from_xhtml(xhtml);
    if (!xml.empty()) merge_images_from_xml(slides, xml);
    return slides;
}

} // namespace lvq
