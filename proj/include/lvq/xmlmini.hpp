// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>

#include "lvq/error.hpp"
#include "lvq/util.hpp"

namespace lvq {

struct XmlTag {
    std::string name;
    std::map<std::string, std::string> attrs;
    bool self_closing = false;
};

namespace detail {

inline std::string xml_decode_entities(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        const std::size_t end = s.find(';', i);
        if (end == std::string::npos || end - i > 12) {
            out.push_back(s[i++]);
            continue;
        }
        const std::string ent = s.substr(i + 1, end - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            try {
                code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                           ? std::stol(ent.substr(2), nullptr, 16)
                           : std::stol(ent.substr(1));
            } catch (const std::exception&) {
                out.append(s, i, end - i + 1);
                i = end + 1;
                continue;
            }
            // UTF-8 encode the code point.
            if (code < 0x80) {
                out.push_back(static_cast<char>(code));
            } else if (code < 0x800) {
                out.push_back(static_cast<char>(0xC0 | (code >> 6)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else if (code < 0x10000) {
                out.push_back(static_cast<char>(0xE0 | (code >> 12)));
                out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else {
                out.push_back(static_cast<char>(0xF0 | (code >> 18)));
                out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            }
        } else {
            out.append(s, i, end - i + 1);
        }
        i = end + 1;
    }
    return out;
}

inline int xml_line_at(const std::string& text, std::size_t pos) {
    int line = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace detail

// Event scan over a small XML document. Handles start/end/self-closing tags,
// attributes, character data, comments, processing instructions, and CDATA.
inline void xml_scan(const std::string& text,
                     const std::function<void(const XmlTag&)>& on_open,
                     const std::function<void(const std::string&)>& on_close,
                     const std::function<void(const std::string&)>& on_text) {
    auto fail = [&text](std::size_t pos, const std::string& what) {
        throw FormatError("line " + std::to_string(detail::xml_line_at(text, pos)) + ": " + what);
    };
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (text[i] != '<') {
            const std::size_t next = text.find('<', i);
            const std::size_t end = (next == std::string::npos) ? n : next;
            if (on_text) {
                const std::string chunk = text.substr(i, end - i);
                if (chunk.find_first_not_of(" \t\r\n") != std::string::npos)
                    on_text(detail::xml_decode_entities(chunk));
            }
            i = end;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const std::size_t end = text.find("-->", i + 4);
            if (end == std::string::npos) fail(i, "unterminated comment");
            i = end + 3;
            continue;
        }
        if (text.compare(i, 9, "<![CDATA[") == 0) {
            const std::size_t end = text.find("]]>", i + 9);
            if (end == std::string::npos) fail(i, "unterminated CDATA section");
            if (on_text) on_text(text.substr(i + 9, end - i - 9));
            i = end + 3;
            continue;
        }
        if (i + 1 < n && (text[i + 1] == '?' || text[i + 1] == '!')) {
            const std::size_t end = text.find('>', i);
            if (end == std::string::npos) fail(i, "unterminated declaration");
            i = end + 1;
            continue;
        }
        if (i + 1 < n && text[i + 1] == '/') {
            const std::size_t end = text.find('>', i);
            if (end == std::string::npos) fail(i, "unterminated closing tag");
            if (on_close) on_close(trim(text.substr(i + 2, end - i - 2)));
            i = end + 1;
            continue;
        }

        // Opening tag: name, then attributes until '>' or '/>'.
        std::size_t p = i + 1;
        auto is_name = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
                   c == '.';
        };
        std::size_t name_end = p;
        while (name_end < n && is_name(text[name_end])) ++name_end;
        if (name_end == p) fail(i, "malformed tag");
        XmlTag tag;
        tag.name = text.substr(p, name_end - p);
        p = name_end;
        while (true) {
            while (p < n && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            if (p >= n) fail(i, "unterminated tag <" + tag.name + ">");
            if (text[p] == '>') {
                ++p;
                break;
            }
            if (text[p] == '/') {
                if (p + 1 >= n || text[p + 1] != '>') fail(p, "malformed tag end");
                tag.self_closing = true;
                p += 2;
                break;
            }
            std::size_t an = p;
            while (an < n && is_name(text[an])) ++an;
            if (an == p) fail(p, "malformed attribute in <" + tag.name + ">");
            const std::string aname = text.substr(p, an - p);
            p = an;
            while (p < n && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            if (p >= n || text[p] != '=') fail(p, "attribute \"" + aname + "\" lacks a value");
            ++p;
            while (p < n && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            if (p >= n || (text[p] != '"' && text[p] != '\''))
                fail(p, "attribute \"" + aname + "\" value must be quoted");
            const char q = text[p++];
            const std::size_t vend = text.find(q, p);
            if (vend == std::string::npos) fail(p, "unterminated attribute value");
            tag.attrs[aname] = detail::xml_decode_entities(text.substr(p, vend - p));
            p = vend + 1;
        }
        if (on_open) on_open(tag);
        if (tag.self_closing && on_close) on_close(tag.name);
        i = p;
    }
}

} // namespace lvq
