#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signbridge/error.hpp"

namespace signbridge::service {

class MultipartError : public Error {
 public:
  using Error::Error;
};

struct FormPart {
  std::string name;
  std::optional<std::string> filename;
  std::string content_type;
  // Points into the body passed to parse_multipart.
  std::string_view data;
};

/// Boundary parameter of a multipart/form-data Content-Type, if any.
std::optional<std::string> multipart_boundary(std::string_view content_type);

/// Splits a multipart/form-data body. Throws MultipartError on bad framing.
std::vector<FormPart> parse_multipart(std::string_view body, std::string_view boundary);

const FormPart* find_part(const std::vector<FormPart>& parts, std::string_view name);

}  // namespace signbridge::service
