#ifndef STEINITZ_SERIALIZE_HPP_
#define STEINITZ_SERIALIZE_HPP_

#include <optional>
#include <string>

#include "json.hpp"
#include "steinitz/ideal.hpp"
#include "steinitz/number_field.hpp"
#include "steinitz/search.hpp"

namespace steinitz {

using Json = nlohmann::ordered_json;

/* Field description file: {"name", "polynomial": [c_0, .., 1],
 * optional "basis": rows over the power basis, optional "discriminant"}.
 * All numbers are decimal strings (or JSON integers). */
struct FieldSpec {
    std::string name;
    std::vector<Int> polynomial;
    std::optional<RatMatrix> basis;
    std::optional<Int> discriminant;
};

FieldSpec field_spec_from_json(const Json& j);
Json field_spec_to_json(const FieldSpec& spec);
FieldSpec load_field_spec(const std::string& path);
FieldPtr build_field(const FieldSpec& spec);

Json read_json_file(const std::string& path);
/* Two-space indented dump with a trailing newline. */
void write_json_file(const std::string& path, const Json& j);

Int json_int(const Json& j);
Rat json_rat(const Json& j);
Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const Element& x);
Element element_from_json(const Json& j);
Json to_json(const FractionalIdeal& I);
FractionalIdeal ideal_from_json(const Json& j);
Json to_json(const PrimeIdeal& P);
/* Raw stored prime; local data is recovered by matching against the
 * factorization of p. */
PrimeIdeal prime_from_json(const Json& j);

Json certificate_to_json(const SearchCertificate& c);
SearchCertificate certificate_from_json(const Json& j);
/* Field rebuilt from the certificate's embedded description. */
FieldPtr certificate_field(const SearchCertificate& c);

}  // namespace steinitz

#endif
