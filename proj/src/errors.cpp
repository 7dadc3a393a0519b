#include "exciton/errors.hpp"

namespace exciton {

void throw_domain(const std::string& where, const std::string& detail)
{
    throw DomainError(where + ": " + detail);
}

} // namespace exciton
