#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chartnav {

// RFC 4180 reader: comma separated, CRLF or LF records, double-quoted fields
// with "" escapes. A trailing empty record is dropped. Throws
// Error(kMalformedDocument) on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace chartnav
