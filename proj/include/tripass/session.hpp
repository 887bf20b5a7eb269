#pragma once

#include "tripass/report.hpp"

namespace tripass {

// Executes n positions x 3 passes in order through the channel and scores
// the outcome. Any failure raised by the channel or the party state machines
// is rethrown as SessionAbortError carrying the last completed position.
RunReport run_session(const SessionConfig& cfg, Channel& channel);

// Convenience: builds the channel from cfg.attack first.
RunReport run_session(const SessionConfig& cfg);

}  // namespace tripass
