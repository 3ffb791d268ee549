#pragma once

// Arbitrated-quantum-signature protocol laboratory: few-qubit state-vector
// core, simulated channels and public board, the two signature schemes, the
// receiver-swap and signature-transfer attacks, and the countermeasures.

#include "aqs/adversary.hpp"
#include "aqs/bell.hpp"
#include "aqs/board.hpp"
#include "aqs/countermeasures.hpp"
#include "aqs/digest.hpp"
#include "aqs/errors.hpp"
#include "aqs/hardened.hpp"
#include "aqs/keys.hpp"
#include "aqs/pad_key.hpp"
#include "aqs/participant.hpp"
#include "aqs/qotp.hpp"
#include "aqs/qubit.hpp"
#include "aqs/rng.hpp"
#include "aqs/scenario.hpp"
#include "aqs/scheme_entangled.hpp"
#include "aqs/scheme_plain.hpp"
#include "aqs/session.hpp"
#include "aqs/transcript.hpp"
