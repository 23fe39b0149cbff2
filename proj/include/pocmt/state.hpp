// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pocmt/params.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

/// Per-validator commitment state. Engagement moves only at window
/// boundaries; participation and availability move every epoch. All
/// components stay non-negative.
struct CommitmentState {
  double engagement = 0.0;     // H
  double participation = 0.0;  // P
  double availability = 0.0;   // U
};

/// What happened to a validator's participation this epoch. `frozen` models
/// an offline validator that neither follows nor violates the protocol.
enum class ParticipationEvent { accrued, slashed, frozen };

/// alpha*H + beta*P + gamma*U.
double compute_score(const CommitmentState& s, const ProtocolParams& p);

/// One consensus-epoch step: availability boost or exponential decay by
/// online status, participation accrual / multiplicative slash / freeze.
/// Engagement is untouched.
CommitmentState epoch_update(const CommitmentState& s, bool online,
                             ParticipationEvent event, const ProtocolParams& p);

/// Two-outcome form: compliant -> accrue, otherwise slash.
CommitmentState epoch_update(const CommitmentState& s, bool online,
                             bool compliant, const ProtocolParams& p);

/// Window-boundary step: H += kappa_h * solved (after optional aging).
/// `solved` must not exceed the window's issued challenge count.
CommitmentState window_update(const CommitmentState& s, int solved, int issued,
                              const ProtocolParams& p);

}  // namespace pocmt
