// Copyright 2026 The peerinc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "peerinc/environment.h"

namespace peerinc {
namespace {

constexpr int kDx[4] = {0, 0, -1, 1};  // N, S, W, E
constexpr int kDy[4] = {-1, 1, 0, 0};

constexpr char kDefaultMap[] =
    "##################\n"
    "#..@@@......@@@..#\n"
    "#.@@@@@....@@@@@.#\n"
    "#..@@@......@@@..#\n"
    "#................#\n"
    "#......@@@.......#\n"
    "#.....@@@@@......#\n"
    "#......@@@.......#\n"
    "##################\n";

}  // namespace

HarvestMap HarvestMap::Parse(const std::string& text) {
  HarvestMap map;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (map.width == 0) map.width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != map.width) {
      throw std::invalid_argument("harvest map row " +
                                  std::to_string(map.height) + " has width " +
                                  std::to_string(line.size()) + ", expected " +
                                  std::to_string(map.width));
    }
    for (char c : line) {
      if (c != '.' && c != '@' && c != '#') {
        throw std::invalid_argument(std::string("harvest map: bad tile '") +
                                    c + "'");
      }
      map.tiles.push_back(static_cast<MapTile>(c));
    }
    ++map.height;
  }
  if (std::none_of(map.tiles.begin(), map.tiles.end(),
                   [](MapTile t) { return t == MapTile::kApple; })) {
    throw std::invalid_argument("harvest map has no apple cells");
  }
  if (std::none_of(map.tiles.begin(), map.tiles.end(),
                   [](MapTile t) { return t == MapTile::kEmpty; })) {
    throw std::invalid_argument("harvest map has no empty spawn cells");
  }
  return map;
}

HarvestMap HarvestMap::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open harvest map " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str());
}

const char* HarvestMap::DefaultText() { return kDefaultMap; }

HarvestMap HarvestMap::Default() { return Parse(kDefaultMap); }

HarvestEnvironment::HarvestEnvironment(EnvDescriptor desc)
    : Environment(std::move(desc)),
      map_(descriptor().map_path.empty() ? HarvestMap::Default()
                                         : HarvestMap::Load(descriptor().map_path)) {
  apples_.assign(map_.tiles.size(), false);
  agents_.assign(num_agents(), Cell{});
  freeze_.assign(num_agents(), 0);
}

int HarvestEnvironment::observation_size() const {
  const int side = 2 * descriptor().view_radius + 1;
  return 3 * side * side;
}

int HarvestEnvironment::apple_count() const {
  return static_cast<int>(std::count(apples_.begin(), apples_.end(), true));
}

void HarvestEnvironment::ResetState(Rng& rng) {
  for (std::size_t k = 0; k < apples_.size(); ++k) {
    apples_[k] = map_.tiles[k] == MapTile::kApple;
  }
  std::vector<Cell> spawn;
  for (int y = 0; y < map_.height; ++y) {
    for (int x = 0; x < map_.width; ++x) {
      if (map_.At(x, y) == MapTile::kEmpty) spawn.push_back({x, y});
    }
  }
  for (Cell& c : agents_) c = spawn[rng.Below(spawn.size())];
  std::fill(freeze_.begin(), freeze_.end(), 0);
}

void HarvestEnvironment::SetAgents(std::vector<Cell> agents) {
  if (static_cast<int>(agents.size()) != num_agents()) {
    throw std::invalid_argument("HarvestEnvironment::SetAgents: wrong count");
  }
  for (Cell c : agents) {
    if (!Walkable(c.x, c.y)) {
      throw std::invalid_argument("HarvestEnvironment::SetAgents: bad cell");
    }
  }
  agents_ = std::move(agents);
}

void HarvestEnvironment::SetApples(const std::vector<Cell>& apples) {
  std::fill(apples_.begin(), apples_.end(), false);
  for (Cell c : apples) {
    if (!map_.InBounds(c.x, c.y) || map_.At(c.x, c.y) != MapTile::kApple) {
      throw std::invalid_argument("HarvestEnvironment::SetApples: not an apple cell");
    }
    apples_[Index(c)] = true;
  }
}

int HarvestEnvironment::NearbyApples(Cell c) const {
  int count = 0;
  for (int dy = -2; dy <= 2; ++dy) {
    for (int dx = -2; dx <= 2; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int x = c.x + dx, y = c.y + dy;
      if (map_.InBounds(x, y) && apples_[Index({x, y})]) ++count;
    }
  }
  return count;
}

double HarvestEnvironment::RegrowthProbability(int nearby) const {
  double p = 0;
  int best = 0;
  for (const auto& row : descriptor().regrowth) {
    if (nearby >= row.min_apples && row.min_apples >= best) {
      best = row.min_apples;
      p = row.probability;
    }
  }
  return p;
}

bool HarvestEnvironment::InBeam(Cell from, int direction, Cell target) const {
  const int half = descriptor().beam_width / 2;
  const int length = descriptor().beam_length;
  int ahead = 0, side = 0;
  switch (direction) {
    case 0: ahead = from.y - target.y; side = target.x - from.x; break;
    case 1: ahead = target.y - from.y; side = target.x - from.x; break;
    case 2: ahead = from.x - target.x; side = target.y - from.y; break;
    case 3: ahead = target.x - from.x; side = target.y - from.y; break;
    default: return false;
  }
  return ahead >= 1 && ahead <= length && std::abs(side) <= half;
}

std::vector<std::vector<int>> HarvestEnvironment::Neighborhoods() const {
  const int r = descriptor().view_radius;
  std::vector<std::vector<int>> out(num_agents());
  for (int i = 0; i < num_agents(); ++i) {
    for (int j = 0; j < num_agents(); ++j) {
      if (j == i) continue;
      if (std::abs(agents_[i].x - agents_[j].x) <= r &&
          std::abs(agents_[i].y - agents_[j].y) <= r) {
        out[i].push_back(j);
      }
    }
  }
  return out;
}

// Planes over the (2r+1)^2 window centred on the agent: apples, other
// agents, walls. Cells outside the map read as walls.
std::vector<Observation> HarvestEnvironment::Observe() const {
  const int r = descriptor().view_radius;
  const int side = 2 * r + 1;
  const int plane = side * side;
  std::vector<Observation> obs(num_agents(),
                               Observation(observation_size(), 0.0));
  for (int i = 0; i < num_agents(); ++i) {
    Observation& o = obs[i];
    const Cell me = agents_[i];
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const int k = (dy + r) * side + (dx + r);
        const int x = me.x + dx, y = me.y + dy;
        if (!map_.InBounds(x, y) || map_.At(x, y) == MapTile::kWall) {
          o[2 * plane + k] = 1.0;
        } else if (apples_[Index({x, y})]) {
          o[k] = 1.0;
        }
      }
    }
    for (int j = 0; j < num_agents(); ++j) {
      if (j == i) continue;
      const int dx = agents_[j].x - me.x, dy = agents_[j].y - me.y;
      if (std::abs(dx) <= r && std::abs(dy) <= r) {
        o[plane + (dy + r) * side + (dx + r)] = 1.0;
      }
    }
  }
  return obs;
}

void HarvestEnvironment::Transition(std::span<const int> actions, Rng& rng,
                                    std::vector<double>& rewards,
                                    std::vector<AgentEvents>& events) {
  const auto& d = descriptor();
  std::vector<bool> frozen_at_start(num_agents());
  for (int i = 0; i < num_agents(); ++i) {
    frozen_at_start[i] = freeze_[i] > 0;
    events[i].frozen = frozen_at_start[i];
    rewards[i] = -d.time_penalty;
  }

  // Agents act in a random order; an agent tagged earlier in the order
  // loses its action for this step as well.
  for (int i : rng.Permutation(num_agents())) {
    if (freeze_[i] > 0) continue;
    const int a = actions[i];
    if (a >= 1 && a <= 4) {
      const int nx = agents_[i].x + kDx[a - 1];
      const int ny = agents_[i].y + kDy[a - 1];
      if (Walkable(nx, ny)) agents_[i] = Cell{nx, ny};
      const int k = Index(agents_[i]);
      if (apples_[k]) {
        apples_[k] = false;
        rewards[i] += 1.0;
        ++events[i].apples;
      }
    } else if (a >= kTagNorth) {
      for (int j = 0; j < num_agents(); ++j) {
        if (j == i || freeze_[j] > 0) continue;
        if (InBeam(agents_[i], a - kTagNorth, agents_[j])) {
          freeze_[j] = d.freeze_steps;
          events[j].tagged = true;
        }
      }
    }
  }

  for (int i = 0; i < num_agents(); ++i) {
    if (frozen_at_start[i]) --freeze_[i];
  }

  // Regrowth from a snapshot of the current apples; a depleted field stays
  // empty for the rest of the episode.
  if (apple_count() == 0) return;
  std::vector<bool> occupied(apples_.size(), false);
  for (Cell c : agents_) occupied[Index(c)] = true;
  std::vector<int> grown;
  for (int y = 0; y < map_.height; ++y) {
    for (int x = 0; x < map_.width; ++x) {
      const int k = Index({x, y});
      if (map_.tiles[k] != MapTile::kApple || apples_[k] || occupied[k]) {
        continue;
      }
      const double p = RegrowthProbability(NearbyApples({x, y}));
      if (p > 0 && rng.Bernoulli(p)) grown.push_back(k);
    }
  }
  for (int k : grown) apples_[k] = true;
}

}  // namespace peerinc
