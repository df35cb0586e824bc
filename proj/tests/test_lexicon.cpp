// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "lvq/lexicon.hpp"

using namespace lvq;

namespace {

const char* kMini =
    "# comment\n"
    "[LEMMAS]\n"
    "team\tteams\n"
    "communication\tcommunications\n"
    "meeting\tmeetings\n"
    "criterion\tcriteria\n"
    "[NOUNS]\n"
    "team\n"
    "communication\n"
    "meeting\n"
    "criterion\n"
    "[SYNONYMS]\n"
    "team,squad,group\n"
    "meeting,session\n";

Lexicon mini() { return Lexicon::parse(kMini); }

} // namespace

TEST_CASE("tokenize: lowercased letter runs of length two or more") {
    CHECK(tokenize("Hello, world--it's 42 A.") ==
          std::vector<std::string>{"hello", "world", "it"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("123 !?") == std::vector<std::string>{});
    // Non-ASCII bytes stay inside the token.
    CHECK(tokenize("na\xC3\xAFve approach").size() == 2);
}

TEST_CASE("lemmatize: dictionary first, then plural stripping, idempotent") {
    Lexicon lex = mini();
    CHECK(lex.lemmatize("Teams") == "team");
    CHECK(lex.lemmatize("team") == "team");
    CHECK(lex.lemmatize("criteria") == "criterion"); // irregular via dictionary
    CHECK(lex.lemmatize("boxes") == "box");          // -es after x
    CHECK(lex.lemmatize("glasses") == "glass");      // -sses
    CHECK(lex.lemmatize("bodies") == "body");        // -ies
    CHECK(lex.lemmatize("buses") == "bus");          // bus stays, -us protected
    CHECK(lex.lemmatize("this") == "this");          // -is protected
    CHECK(lex.lemmatize("glass") == "glass");        // -ss protected
    CHECK(lex.lemmatize("updates") == "update");

    const char* words[] = {"teams",   "team",   "criteria", "boxes", "glasses",
                           "bodies",  "buses",  "this",     "glass", "updates",
                           "meetings", "sessions", "communications", "was"};
    for (const char* w : words) {
        const std::string once = lex.lemmatize(w);
        CHECK(lex.lemmatize(once) == once);
    }
}

TEST_CASE("noun filter: listed lemmas and derivational suffixes") {
    Lexicon lex = mini();
    CHECK(lex.is_noun("teams"));
    CHECK(lex.is_noun("communication"));
    CHECK(lex.is_noun("automation")); // unlisted, -tion suffix
    CHECK(lex.is_noun("middleware")); // -ware suffix
    CHECK_FALSE(lex.is_noun("need"));
    CHECK_FALSE(lex.is_noun("global"));
    CHECK_FALSE(lex.is_noun("tion")); // bare suffix is too short to count
}

TEST_CASE("synonyms: group members excluding the query") {
    Lexicon lex = mini();
    CHECK(lex.synonyms("team") == std::set<std::string>{"squad", "group"});
    CHECK(lex.synonyms("squad") == std::set<std::string>{"team", "group"});
    CHECK(lex.synonyms("communication").empty());
}

TEST_CASE("term set: lemmatized nouns closed under synonym groups") {
    Lexicon lex = mini();
    CHECK(term_set({"Global Teams"}, lex) == std::set<std::string>{"team", "squad", "group"});
    CHECK(term_set({"we need communication"}, lex) == std::set<std::string>{"communication"});
    CHECK(term_set({"nothing nounish here"}, lex).empty());
}

TEST_CASE("lemma set: all tokens, no noun gate, no synonym closure") {
    Lexicon lex = mini();
    CHECK(lemma_set({"Teams were meeting"}, lex) ==
          std::set<std::string>{"team", "were", "meeting"});
}

TEST_CASE("lexicon parsing: malformed files raise FormatError") {
    CHECK_THROWS_AS(Lexicon::parse("[VERBS]\n"), FormatError);
    CHECK_THROWS_AS(Lexicon::parse("team\tteams\n"), FormatError); // before any section
    CHECK_THROWS_AS(Lexicon::parse("[SYNONYMS]\nteam\n"), FormatError);
    CHECK(Lexicon::parse("").empty());
    CHECK_FALSE(mini().empty());
}

TEST_CASE("shipped lexicon loads and covers the basics") {
    Lexicon lex = Lexicon::load(LVQ_LEXICON_PATH);
    CHECK_FALSE(lex.empty());
    CHECK(lex.is_noun("teams"));
    CHECK(lex.is_noun("architecture"));
    CHECK_FALSE(lex.is_noun("need"));
    CHECK_FALSE(lex.is_noun("global"));
    CHECK(lex.lemmatize("deadlines") == "deadline");
    CHECK(lex.lemmatize("people") == "person");
    CHECK(lex.synonyms("error") == std::set<std::string>{"fault", "defect", "bug"});
    CHECK(term_set({"Global Teams"}, lex) == std::set<std::string>{"team", "squad", "group"});
}
