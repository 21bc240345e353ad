#pragma once

#include <string>
#include <vector>

#include "gclink/cli/certificate.hpp"

namespace gclink::cli {

struct RecheckLine {
  std::string check;
  bool ok = false;
  std::string detail;
};

struct RecheckReport {
  std::vector<RecheckLine> lines;
  bool passed() const;
};

/**
 * Re-validates a certificate document from its serialised frames, with its
 * own plain-array linear algebra rather than the library's geometry. Throws
 * InvalidInput when the document is malformed or has the wrong schema.
 */
RecheckReport recheck(const Json& document);

}  // namespace gclink::cli
