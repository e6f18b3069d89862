#include "ybhom/json_io.hpp"

#include <fstream>
#include <limits>

namespace ybhom {

namespace {

OrderedJson group_fields(const AbelianGroup& g) {
    OrderedJson torsion = OrderedJson::array();
    for (const Int& d : g.torsion) {
        if (d <= std::numeric_limits<std::int64_t>::max())
            torsion.push_back(static_cast<std::int64_t>(d));
        else
            torsion.push_back(d.str());
    }
    OrderedJson j;
    j["free_rank"] = g.free_rank;
    j["torsion"] = std::move(torsion);
    return j;
}

OrderedJson rational_value(const Rational& v) {
    if (boost::multiprecision::denominator(v) == 1) {
        Int num = boost::multiprecision::numerator(v);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return OrderedJson(static_cast<std::int64_t>(num));
    }
    return OrderedJson(v.str());
}

}  // namespace

OrderedJson to_json(const HomologyReport& r) {
    OrderedJson j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["variant"] = to_string(r.variant);
    j["coeff"] = r.coeff.to_string();
    OrderedJson g = group_fields(r.group);
    j["free_rank"] = g["free_rank"];
    j["torsion"] = g["torsion"];
    j["elapsed_ms"] = r.elapsed_ms;
    j["matrix_dims"] = {{r.matrix_dims[0][0], r.matrix_dims[0][1]},
                        {r.matrix_dims[1][0], r.matrix_dims[1][1]}};
    return j;
}

OrderedJson to_json(const Cochain& f) {
    OrderedJson values = OrderedJson::object();
    for (const auto& [code, v] : f.values()) values[std::to_string(code)] = rational_value(v);
    OrderedJson j;
    j["m"] = f.m();
    j["n"] = f.n();
    j["ring"] = f.ring() == Ring::Z ? "Z" : "Q";
    j["values"] = std::move(values);
    return j;
}

OrderedJson to_json(const CheckResult& r) {
    OrderedJson j;
    j["check"] = r.check;
    j["m"] = r.m;
    j["n"] = r.n;
    if (r.variant) j["variant"] = to_string(*r.variant);
    j["pass"] = r.pass;
    j["expected"] = r.expected;
    j["got"] = r.got;
    return j;
}

OrderedJson to_json(const Presentation& p, const AbelianGroup& abelianized) {
    OrderedJson rels = OrderedJson::array();
    for (const auto& rel : p.relations) {
        OrderedJson jr;
        jr["lhs"] = rel.lhs;
        jr["rhs"] = rel.rhs;
        jr["trivial"] = rel.trivial;
        rels.push_back(std::move(jr));
    }
    OrderedJson j;
    j["generators"] = p.generator_count;
    j["relations"] = std::move(rels);
    j["trivial_relations"] = p.trivial_count();
    j["abelianization"] = group_fields(abelianized);
    j["abelianization_name"] = abelianized.to_string();
    return j;
}

YBMap ybmap_from_json(const OrderedJson& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("R1") || !j.contains("R2"))
        throw InputError("biquandle file needs the fields m, R1, R2");
    int m = 0;
    try {
        m = j.at("m").get<int>();
    } catch (const std::exception&) {
        throw InputError("biquandle field m must be an integer");
    }
    auto table = [&](const char* name) {
        std::vector<std::vector<Element>> t;
        try {
            t = j.at(name).get<std::vector<std::vector<Element>>>();
        } catch (const std::exception&) {
            throw InputError(std::string("biquandle field ") + name +
                             " must be a matrix of integers");
        }
        return t;
    };
    return YBMap::from_tables(m, table("R1"), table("R2"));
}

YBMap ybmap_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open biquandle file " + path);
    OrderedJson j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return ybmap_from_json(j);
}

YBMap ybmap_from_spec(const std::string& spec) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t colon = s.find(':', start);
            if (colon == std::string::npos) {
                parts.push_back(s.substr(start));
                break;
            }
            parts.push_back(s.substr(start, colon - start));
            start = colon + 1;
        }
        return parts;
    };
    auto parse_int = [&spec](const std::string& s) {
        try {
            return std::stoll(s);
        } catch (const std::exception&) {
            throw InputError("bad number \"" + s + "\" in spec \"" + spec + "\"");
        }
    };
    if (spec.rfind("cyclic:", 0) == 0) {
        auto parts = split(spec);
        if (parts.size() != 2) throw InputError("cyclic spec is cyclic:<m>");
        long long m = parse_int(parts[1]);
        if (m < 1 || m > 1'000'000) throw InputError("cyclic size out of range");
        return make_cyclic(static_cast<int>(m)).map();
    }
    if (spec.rfind("alexander:", 0) == 0) {
        auto parts = split(spec);
        if (parts.size() != 4) throw InputError("alexander spec is alexander:<m>:<s>:<t>");
        long long m = parse_int(parts[1]);
        if (m < 1 || m > 1'000'000) throw InputError("alexander size out of range");
        return make_alexander(static_cast<int>(m), parse_int(parts[2]), parse_int(parts[3])).map();
    }
    return ybmap_from_file(spec);
}

}  // namespace ybhom
