#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracsemi {

/// Broad failure class, used by the CLI to pick an exit status.
enum class ErrorCategory { schema, domain, numerical };

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, ErrorCategory category, const std::string& what)
      : std::runtime_error(what), kind_(kind), category_(category) {}

  /// Stable machine-readable name, e.g. "DomainError".
  std::string_view kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string_view kind_;
  ErrorCategory category_;
};

#define FRACSEMI_DEFINE_ERROR(Name, Category)                                  \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name, Category, what) {}  \
  }

FRACSEMI_DEFINE_ERROR(SchemaError, ErrorCategory::schema);
FRACSEMI_DEFINE_ERROR(DomainError, ErrorCategory::domain);
FRACSEMI_DEFINE_ERROR(DimensionError, ErrorCategory::domain);
FRACSEMI_DEFINE_ERROR(InsufficientSamplesError, ErrorCategory::domain);
FRACSEMI_DEFINE_ERROR(NonFiniteError, ErrorCategory::numerical);
FRACSEMI_DEFINE_ERROR(NoLimitError, ErrorCategory::numerical);
FRACSEMI_DEFINE_ERROR(CFLViolationError, ErrorCategory::numerical);

#undef FRACSEMI_DEFINE_ERROR

}  // namespace fracsemi
