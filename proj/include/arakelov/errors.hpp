#pragma once

#include <stdexcept>
#include <string>

namespace arakelov {

/* Every failure raised by the library derives from Error so that callers
 * (in particular the command line front end) can map it to an exit code.
 */
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define ARAKELOV_DEFINE_ERROR(name)                                            \
    class name : public Error {                                                \
      public:                                                                  \
        explicit name(const std::string& what) : Error(#name ": " + what) {}   \
    }

// exact-linalg
ARAKELOV_DEFINE_ERROR(RankError);
ARAKELOV_DEFINE_ERROR(ShapeError);
ARAKELOV_DEFINE_ERROR(SingularError);
ARAKELOV_DEFINE_ERROR(FormError);

// fields
ARAKELOV_DEFINE_ERROR(SpecError);
ARAKELOV_DEFINE_ERROR(DivError);
ARAKELOV_DEFINE_ERROR(FieldMismatch);
ARAKELOV_DEFINE_ERROR(NotInSubfield);

// ideals
ARAKELOV_DEFINE_ERROR(ZeroIdeal);
ARAKELOV_DEFINE_ERROR(NotRamified);
ARAKELOV_DEFINE_ERROR(Unsupported);

// existence
ARAKELOV_DEFINE_ERROR(InternalInconsistency);

#undef ARAKELOV_DEFINE_ERROR

/* Raised by verify_modularity; clause() names the failed check. */
class ModularityFailure : public Error {
  public:
    ModularityFailure(std::string clause, const std::string& detail)
        : Error("ModularityFailure: clause " + clause + ": " + detail),
          clause_(std::move(clause)) {}
    const std::string& clause() const { return clause_; }

  private:
    std::string clause_;
};

}  // namespace arakelov
