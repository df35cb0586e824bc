// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/util.hpp"

namespace lvq {

// Lowercased letter runs of length >= 2. Any non-ASCII byte counts as a
// letter so multi-byte UTF-8 sequences stay inside one token.
inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2) out.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (std::isalpha(c) || c >= 0x80)
            cur.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();
    return out;
}

// Word knowledge for the linguistic operations: inflected-form to lemma
// mapping, the set of noun lemmas, and synonym groups over lemmas.
class Lexicon {
public:
    // File format: [LEMMAS] lines "lemma<TAB>form,form,...", [NOUNS] one
    // lemma per line, [SYNONYMS] one comma-separated group per line.
    // '#' starts a comment.
    static Lexicon parse(const std::string& text) {
        Lexicon lex;
        enum class Section { none, lemmas, nouns, synonyms } section = Section::none;
        int lineno = 0;
        std::string cur;
        auto handle = [&](const std::string& raw) {
            const std::string line = trim(raw.substr(0, raw.find('#')));
            if (line.empty()) return;
            if (line.front() == '[') {
                if (line == "[LEMMAS]") section = Section::lemmas;
                else if (line == "[NOUNS]") section = Section::nouns;
                else if (line == "[SYNONYMS]") section = Section::synonyms;
                else
                    throw FormatError("lexicon line " + std::to_string(lineno) +
                                      ": unknown section " + line);
                return;
            }
            switch (section) {
                case Section::none:
                    throw FormatError("lexicon line " + std::to_string(lineno) +
                                      ": entry before any section header");
                case Section::lemmas: {
                    const std::size_t tab = line.find('\t');
                    const std::string lemma = lowercase(trim(line.substr(0, tab)));
                    if (lemma.empty())
                        throw FormatError("lexicon line " + std::to_string(lineno) +
                                          ": empty lemma");
                    lex.form_to_lemma_[lemma] = lemma;
                    if (tab != std::string::npos)
                        for (const std::string& f : split(line.substr(tab + 1), ','))
                            if (const std::string form = lowercase(trim(f)); !form.empty())
                                lex.form_to_lemma_[form] = lemma;
                    break;
                }
                case Section::nouns:
                    lex.nouns_.insert(lowercase(line));
                    break;
                case Section::synonyms: {
                    std::set<std::string> group;
                    for (const std::string& w : split(line, ','))
                        if (const std::string word = lowercase(trim(w)); !word.empty())
                            group.insert(word);
                    if (group.size() < 2)
                        throw FormatError("lexicon line " + std::to_string(lineno) +
                                          ": synonym group needs at least two words");
                    const std::size_t id = lex.synonym_groups_.size();
                    lex.synonym_groups_.push_back(group);
                    for (const std::string& w : group) lex.word_to_groups_[w].push_back(id);
                    break;
                }
            }
        };
        for (char c : text) {
            if (c == '\n') {
                ++lineno;
                handle(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        ++lineno;
        handle(cur);
        return lex;
    }

    static Lexicon load(const std::filesystem::path& path) { return parse(read_file(path)); }

    // Dictionary lookup first, then plural-stripping rules, iterated until the
    // result stops changing, so the mapping is idempotent.
    std::string lemmatize(const std::string& token) const {
        std::string w = lowercase(token);
        for (int guard = 0; guard < 8; ++guard) {
            std::string next = w;
            if (auto it = form_to_lemma_.find(next); it != form_to_lemma_.end()) {
                next = it->second;
            } else {
                next = strip_plural(next);
            }
            if (next == w) break;
            w = next;
        }
        return w;
    }

    // A token names a thing when its lemma is a listed noun or carries one of
    // the derivational suffixes that almost always form nouns.
    bool is_noun(const std::string& token) const {
        const std::string lemma = lemmatize(token);
        if (nouns_.count(lemma)) return true;
        static const char* kSuffixes[] = {"tion", "ment", "ness", "ity", "ism", "ware"};
        for (const char* suf : kSuffixes) {
            const std::size_t n = std::string(suf).size();
            if (lemma.size() > n + 1 && lemma.compare(lemma.size() - n, n, suf) == 0) return true;
        }
        return false;
    }

    // All synonym-group members of a lemma, the lemma excluded.
    std::set<std::string> synonyms(const std::string& lemma) const {
        std::set<std::string> out;
        if (auto it = word_to_groups_.find(lemma); it != word_to_groups_.end())
            for (std::size_t id : it->second)
                for (const std::string& w : synonym_groups_[id])
                    if (w != lemma) out.insert(w);
        return out;
    }

    bool empty() const { return form_to_lemma_.empty() && nouns_.empty(); }

private:
    static std::string strip_plural(const std::string& w) {
        auto ends = [&w](const char* suf) {
            const std::size_t n = std::string(suf).size();
            return w.size() >= n && w.compare(w.size() - n, n, suf) == 0;
        };
        if (w.size() > 4 && ends("ies")) return w.substr(0, w.size() - 3) + "y";
        if (w.size() > 4 && ends("sses")) return w.substr(0, w.size() - 2);
        if (w.size() > 3 && ends("es")) {
            const std::string stem = w.substr(0, w.size() - 2);
            auto stem_ends = [&stem](const char* suf) {
                const std::size_t n = std::string(suf).size();
                return stem.size() >= n && stem.compare(stem.size() - n, n, suf) == 0;
            };
            if (stem_ends("s") || stem_ends("x") || stem_ends("z") || stem_ends("ch") ||
                stem_ends("sh") || stem_ends("o"))
                return stem;
        }
        if (w.size() > 3 && ends("s") && !ends("ss") && !ends("us") && !ends("is"))
            return w.substr(0, w.size() - 1);
        return w;
    }

    std::map<std::string, std::string> form_to_lemma_;
    std::set<std::string> nouns_;
    std::vector<std::set<std::string>> synonym_groups_;
    std::map<std::string, std::vector<std::size_t>> word_to_groups_;
};

// Lemma-level terms of a text fragment: noun tokens are lemmatized and the
// result is closed under the lexicon's synonym groups.
inline std::set<std::string> term_set(const std::vector<std::string>& lines, const Lexicon& lex) {
    std::set<std::string> terms;
    for (const std::string& line : lines)
        for (const std::string& tok : tokenize(line))
            if (lex.is_noun(tok)) terms.insert(lex.lemmatize(tok));
    std::set<std::string> expanded = terms;
    for (const std::string& t : terms)
        for (const std::string& s : lex.synonyms(t)) expanded.insert(s);
    return expanded;
}

// Plain lemma set of a fragment, no noun filter and no synonym closure.
inline std::set<std::string> lemma_set(const std::vector<std::string>& lines, const Lexicon& lex) {
    std::set<std::string> out;
    for (const std::string& line : lines)
        for (const std::string& tok : tokenize(line)) out.insert(lex.lemmatize(tok));
    return out;
}

} // namespace lvq
