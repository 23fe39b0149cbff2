// SPDX-License-Identifier: Apache-2.0
#include "pocmt/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pocmt {

double compute_score(const CommitmentState& s, const ProtocolParams& p) {
  return p.weight_engagement * s.engagement +
         p.weight_participation * s.participation +
         p.weight_availability * s.availability;
}

CommitmentState epoch_update(const CommitmentState& s, bool online,
                             ParticipationEvent event, const ProtocolParams& p) {
  CommitmentState out = s;
  if (online) {
    out.availability = std::min(s.availability + p.boost_availability,
                                p.availability_cap);
  } else {
    out.availability = s.availability * std::exp(-p.decay_rate);
  }
  switch (event) {
    case ParticipationEvent::accrued:
      out.participation = s.participation + p.boost_participation;
      break;
    case ParticipationEvent::slashed:
      out.participation = s.participation * p.slash_factor;
      break;
    case ParticipationEvent::frozen:
      break;
  }
  return out;
}

CommitmentState epoch_update(const CommitmentState& s, bool online,
                             bool compliant, const ProtocolParams& p) {
  return epoch_update(s, online,
                      compliant ? ParticipationEvent::accrued
                                : ParticipationEvent::slashed,
                      p);
}

CommitmentState window_update(const CommitmentState& s, int solved, int issued,
                              const ProtocolParams& p) {
  if (solved < 0 || solved > issued) {
    throw std::logic_error("window_update: solved count outside [0, issued]");
  }
  CommitmentState out = s;
  double h = s.engagement;
  if (p.engagement_decay > 0) h *= std::exp(-p.engagement_decay);
  out.engagement = h + p.boost_engagement * solved;
  return out;
}

}  // namespace pocmt
