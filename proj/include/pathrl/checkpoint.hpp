#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "pathrl/actor_critic.hpp"

namespace pathrl {

// Everything a training run needs to continue at an episode boundary:
// the four networks, both optimizer states, and the schedule counters.
// Stored as structured text with %.17g decimals so the round-trip is
// bit-exact at double precision.
struct Checkpoint {
  nn::Actor actor;
  nn::Actor actor_target;
  nn::Mlp critic;
  nn::Mlp critic_target;
  nn::ActorAdam actor_adam;
  nn::AdamState critic_adam;
  std::int64_t episodes_done = 0;
  double actor_lr = 0.0;
  double critic_lr = 0.0;
};

void save_checkpoint(const Checkpoint& ckpt, std::ostream& out);
Checkpoint load_checkpoint(std::istream& in);
void save_checkpoint_file(const Checkpoint& ckpt,
                          const std::filesystem::path& file);
Checkpoint load_checkpoint_file(const std::filesystem::path& file);

}  // namespace pathrl
