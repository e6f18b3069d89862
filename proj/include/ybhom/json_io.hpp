#pragma once

#include <json.hpp>

#include <string>

#include "ybhom/verify.hpp"

namespace ybhom {

using OrderedJson = nlohmann::ordered_json;

OrderedJson to_json(const HomologyReport& r);
OrderedJson to_json(const Cochain& f);
OrderedJson to_json(const CheckResult& r);
OrderedJson to_json(const Presentation& p, const AbelianGroup& abelianized);

//! Biquandle file format: {"m": int, "R1": [[..]], "R2": [[..]]},
//! row index = first argument.
YBMap ybmap_from_json(const nlohmann::ordered_json& j);
YBMap ybmap_from_file(const std::string& path);

//! Builtin specifiers "cyclic:<m>" and "alexander:<m>:<s>:<t>", or a path to
//! a biquandle JSON file.
YBMap ybmap_from_spec(const std::string& spec);

}  // namespace ybhom
