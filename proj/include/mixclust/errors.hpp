#pragma once

#include <stdexcept>
#include <string>

namespace mixclust {

// Two failure families, mapped to CLI exit codes:
//   InputError   -> 2  (unreadable files, malformed schemas, bad arguments)
//   NumericError -> 3  (undefined transforms, degenerate geometry, infeasible designs)
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MIXCLUST_ERROR(Name, Base)                                  \
    struct Name : Base {                                            \
        explicit Name(const std::string& what) : Base(what) {}      \
    }

MIXCLUST_ERROR(EmptyColumn, InputError);
MIXCLUST_ERROR(MissingValue, InputError);
MIXCLUST_ERROR(SchemaMismatch, InputError);
MIXCLUST_ERROR(LevelOutOfRange, InputError);
MIXCLUST_ERROR(BadTupleWidth, InputError);
MIXCLUST_ERROR(BadK, InputError);
MIXCLUST_ERROR(LengthMismatch, InputError);

MIXCLUST_ERROR(ConstantColumn, NumericError);
MIXCLUST_ERROR(ConstantContinuousColumn, NumericError);
MIXCLUST_ERROR(NoPreimage, NumericError);
MIXCLUST_ERROR(OutOfHingeRange, NumericError);
MIXCLUST_ERROR(DegenerateHinges, NumericError);
MIXCLUST_ERROR(NegativeEntry, NumericError);
MIXCLUST_ERROR(ZeroMarginal, NumericError);
MIXCLUST_ERROR(ZeroColumnMass, NumericError);
MIXCLUST_ERROR(DegenerateGains, NumericError);
MIXCLUST_ERROR(BadOmega, NumericError);
MIXCLUST_ERROR(InfeasibleDesign, NumericError);

#undef MIXCLUST_ERROR

} // namespace mixclust
