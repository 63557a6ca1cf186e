#ifndef ADINST_JSON_EXPORT_HPP
#define ADINST_JSON_EXPORT_HPP

#include <set>

#include "adinst/dsl.hpp"
#include "adinst/institution.hpp"
#include "adinst/token_game.hpp"
#include "json.hpp"

namespace adinst {

// Field names follow the in-memory types.
nlohmann::json to_json(const Formula& f);
nlohmann::json to_json(const Signature& sig);
nlohmann::json to_json(const Diagram& d);
nlohmann::json to_json(const SignatureMorphism& m);
nlohmann::json to_json(const Structure& s);
nlohmann::json to_json(const Sentence& s);
nlohmann::json to_json(const Document& doc);
nlohmann::json to_json(const Trace& t);
nlohmann::json to_json(const ExploredTrace& t);
nlohmann::json to_json(const LawReport& r);

}  // namespace adinst

#endif
