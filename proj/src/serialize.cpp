#include "steinitz/serialize.hpp"

#include <fstream>
#include <sstream>

#include "steinitz/error.hpp"

namespace steinitz {

namespace {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse_error, std::string(what) + ": " + e.what());
    }
}

Json int_list(const std::vector<Int>& v)
{
    Json a = Json::array();
    for (auto& x : v)
        a.push_back(to_json(x));
    return a;
}

}  // namespace

Int json_int(const Json& j)
{
    if (j.is_number_integer())
        return Int(j.get<long>());
    if (!j.is_string())
        throw Error(ErrorKind::parse_error, "expected an integer");
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0)
        throw Error(ErrorKind::parse_error, "malformed integer '" + j.get<std::string>() + "'");
    return x;
}

Rat json_rat(const Json& j)
{
    if (j.is_number_integer())
        return Rat(j.get<long>());
    if (!j.is_string())
        throw Error(ErrorKind::parse_error, "expected a rational");
    return parse_rational(j.get<std::string>());
}

Json to_json(const Int& x) { return x.get_str(); }
Json to_json(const Rat& x) { return to_string(x); }

Json to_json(const Element& x)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i)
        a.push_back(to_json(x.coord(i)));
    return a;
}

Element element_from_json(const Json& j)
{
    return parsing("element", [&] {
        RatVector v;
        for (auto& c : j)
            v.push_back(json_rat(c));
        if (v.empty())
            throw Error(ErrorKind::parse_error, "empty element");
        return Element::from_coords(v);
    });
}

Json to_json(const FractionalIdeal& I)
{
    Json rows = Json::array();
    for (auto& r : I.hnf)
        rows.push_back(int_list(r));
    return Json{{"hnf", rows}, {"den", to_json(I.den)}};
}

FractionalIdeal ideal_from_json(const Json& j)
{
    return parsing("ideal", [&] {
        FractionalIdeal I;
        for (auto& r : j.at("hnf")) {
            IntVector row;
            for (auto& c : r)
                row.push_back(json_int(c));
            I.hnf.push_back(std::move(row));
        }
        I.den = json_int(j.at("den"));
        return I;
    });
}

Json to_json(const PrimeIdeal& P)
{
    Json j = to_json(P.ideal);
    j["p"] = to_json(P.p);
    j["e"] = P.e;
    j["f"] = P.f;
    return j;
}

PrimeIdeal prime_from_json(const Json& j)
{
    return parsing("prime ideal", [&] {
        PrimeIdeal P;
        P.ideal = ideal_from_json(j);
        P.p = json_int(j.at("p"));
        P.e = j.at("e").get<unsigned>();
        P.f = j.at("f").get<unsigned>();
        return P;
    });
}

FieldSpec field_spec_from_json(const Json& j)
{
    return parsing("field spec", [&] {
        FieldSpec s;
        s.name = j.value("name", std::string());
        for (auto& c : j.at("polynomial"))
            s.polynomial.push_back(json_int(c));
        if (j.contains("basis")) {
            RatMatrix b;
            for (auto& r : j.at("basis")) {
                RatVector row;
                for (auto& c : r)
                    row.push_back(json_rat(c));
                b.push_back(std::move(row));
            }
            s.basis = std::move(b);
        }
        if (j.contains("discriminant"))
            s.discriminant = json_int(j.at("discriminant"));
        return s;
    });
}

Json field_spec_to_json(const FieldSpec& spec)
{
    Json j;
    j["name"] = spec.name;
    j["polynomial"] = int_list(spec.polynomial);
    if (spec.basis) {
        Json rows = Json::array();
        for (auto& r : *spec.basis) {
            Json row = Json::array();
            for (auto& c : r)
                row.push_back(to_json(c));
            rows.push_back(row);
        }
        j["basis"] = rows;
    }
    if (spec.discriminant)
        j["discriminant"] = to_json(*spec.discriminant);
    return j;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse_error, "cannot open " + path);
    return parsing(path.c_str(), [&] { return Json::parse(in); });
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::invalid_argument, "cannot write " + path);
    out << j.dump(2) << '\n';
}

FieldSpec load_field_spec(const std::string& path) { return field_spec_from_json(read_json_file(path)); }

FieldPtr build_field(const FieldSpec& spec) { return make_field(spec.polynomial, spec.basis, spec.discriminant); }

Json certificate_to_json(const SearchCertificate& c)
{
    Json j;
    j["format"] = "steinitz-certificate/1";
    FieldSpec spec{c.field_name, c.polynomial, c.basis, std::nullopt};
    j["field"] = field_spec_to_json(spec);
    j["search"] = Json{{"degree", c.n},
                       {"seed", std::to_string(c.seed)},
                       {"box", to_json(c.box)},
                       {"target_class", c.target_class},
                       {"class_group", c.class_group}};
    j["a_ideal"] = to_json(c.a);
    j["gamma"] = to_json(c.gamma);
    j["p1"] = to_json(c.p1);
    j["p2"] = to_json(c.p2);
    j["b1"] = to_json(c.b1);
    j["b2"] = to_json(c.b2);
    Json ap = Json::array();
    for (auto& r : c.a_prime)
        ap.push_back(to_json(r));
    j["a_prime"] = ap;
    Json av = Json::array();
    for (auto& x : c.avec)
        av.push_back(to_json(x));
    j["a"] = av;
    j["b"] = to_json(c.b);
    Json f = Json::array();
    for (auto& x : c.f)
        f.push_back(to_json(x));
    j["form"] = f;
    j["delta"] = to_json(c.delta);
    Json nf = Json::array();
    for (auto& pp : c.norm_factorization)
        nf.push_back(Json::array({to_json(pp.prime), pp.exponent}));
    j["norm_factorization"] = nf;
    j["statistics"] = Json{{"candidates", c.stats.candidates},
                           {"not_squarefree", c.stats.not_squarefree},
                           {"unknown", c.stats.unknown},
                           {"degenerate", c.stats.degenerate},
                           {"spot_checks", c.stats.spot_checks},
                           {"last_t2", to_json(c.stats.last_t2)}};
    Json flags = Json::object();
    for (auto& name : certificate_flag_names()) {
        auto it = c.flags.find(name);
        flags[name] = it != c.flags.end() && it->second;
    }
    j["flags"] = flags;
    return j;
}

SearchCertificate certificate_from_json(const Json& j)
{
    return parsing("certificate", [&] {
        if (j.value("format", std::string()) != "steinitz-certificate/1")
            throw Error(ErrorKind::parse_error, "unknown certificate format");
        SearchCertificate c;
        FieldSpec spec = field_spec_from_json(j.at("field"));
        c.field_name = spec.name;
        c.polynomial = spec.polynomial;
        c.basis = spec.basis;
        const Json& s = j.at("search");
        c.n = s.at("degree").get<unsigned>();
        c.seed = std::stoull(s.at("seed").get<std::string>());
        c.box = json_int(s.at("box"));
        c.target_class = s.at("target_class").get<long>();
        c.class_group = s.at("class_group").get<std::vector<long>>();
        c.a = prime_from_json(j.at("a_ideal"));
        c.gamma = element_from_json(j.at("gamma"));
        c.p1 = prime_from_json(j.at("p1"));
        c.p2 = prime_from_json(j.at("p2"));
        c.b1 = element_from_json(j.at("b1"));
        c.b2 = element_from_json(j.at("b2"));
        for (auto& r : j.at("a_prime"))
            c.a_prime.push_back(json_rat(r));
        for (auto& x : j.at("a"))
            c.avec.push_back(element_from_json(x));
        c.b = element_from_json(j.at("b"));
        for (auto& x : j.at("form"))
            c.f.push_back(element_from_json(x));
        c.delta = element_from_json(j.at("delta"));
        for (auto& pp : j.at("norm_factorization"))
            c.norm_factorization.push_back(PrimePower{json_int(pp.at(0)), pp.at(1).get<unsigned>()});
        if (j.contains("statistics")) {
            const Json& st = j.at("statistics");
            c.stats.candidates = st.value("candidates", std::uint64_t{0});
            c.stats.not_squarefree = st.value("not_squarefree", std::uint64_t{0});
            c.stats.unknown = st.value("unknown", std::uint64_t{0});
            c.stats.degenerate = st.value("degenerate", std::uint64_t{0});
            c.stats.spot_checks = st.value("spot_checks", std::uint64_t{0});
            if (st.contains("last_t2"))
                c.stats.last_t2 = json_rat(st.at("last_t2"));
        }
        for (auto& [name, v] : j.at("flags").items())
            c.flags[name] = v.get<bool>();
        return c;
    });
}

FieldPtr certificate_field(const SearchCertificate& c) { return make_field(c.polynomial, c.basis); }

}  // namespace steinitz
