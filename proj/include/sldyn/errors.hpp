#pragma once

#include <stdexcept>
#include <string>

namespace sldyn {

// Typed failure raised by engine operations. SplitImage, LiftFailure and
// DescentFailure falsify statements the correspondence checks rely on; they
// are reported with a witness rather than silently repaired.
struct EngineError : std::runtime_error {
    enum class Code {
        BridgeInterior,   // point evaluation inside an open bridge interval
        ZeroAtCorner,     // corner sign hit zero (non-regular parameter)
        OddComponent,     // state restriction applied to a bridge state
        LiftFailure,      // lifted edge missing in the bridge-model graph
        DescentFailure,   // no odd-count-reducing edge out of a bridge state
        SplitImage,       // embedded Morse set meets two Morse sets
        MultipleTerminal, // forward closure of an attractor image holds >1 attractor
        UnknownFixture,
        BadInput,
    };

    EngineError(Code c, const std::string& message) : std::runtime_error(message), code(c) {}
    Code code;
};

inline const char* engine_error_code_name(EngineError::Code c) {
    switch (c) {
        case EngineError::Code::BridgeInterior: return "BridgeInterior";
        case EngineError::Code::ZeroAtCorner: return "ZeroAtCorner";
        case EngineError::Code::OddComponent: return "OddComponent";
        case EngineError::Code::LiftFailure: return "LiftFailure";
        case EngineError::Code::DescentFailure: return "DescentFailure";
        case EngineError::Code::SplitImage: return "SplitImage";
        case EngineError::Code::MultipleTerminal: return "MultipleTerminal";
        case EngineError::Code::UnknownFixture: return "UnknownFixture";
        case EngineError::Code::BadInput: return "BadInput";
    }
    return "EngineError";
}

}  // namespace sldyn
