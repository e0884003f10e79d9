#include "charp/zq.hpp"

#include <ostream>

namespace charp {

std::ostream& operator<<(std::ostream& os, const Zq& z) {
    return os << z.value();
}

}  // namespace charp
