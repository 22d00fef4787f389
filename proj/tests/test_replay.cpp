#include <doctest.h>

#include <deque>

#include <boost/math/distributions/chi_squared.hpp>

#include "dqnlab/replay/replay_buffer.hpp"

using dqnlab::replay::ReplayBuffer;
using dqnlab::replay::Rng;
using dqnlab::replay::Transition;

namespace {

Transition tagged(int id) {
  Transition t;
  t.state = {static_cast<double>(id)};
  t.next_state = {static_cast<double>(id + 1)};
  t.reward = id;
  return t;
}

int tag(const Transition& t) { return static_cast<int>(t.state[0]); }

}  // namespace

TEST_SUITE("replay") {

TEST_CASE("push grows then evicts the oldest") {
  ReplayBuffer buf(4);
  buf.push(tagged(0));
  CHECK(buf.size() == 1);
  for (int i = 1; i < 5; ++i) buf.push(tagged(i));
  CHECK(buf.size() == 4);
  for (const auto& t : buf.contents()) CHECK(tag(t) != 0);
  CHECK(tag(buf.at(0)) == 1);
}

TEST_CASE("FIFO behaviour matches a plain list on random workloads") {
  Rng rng(5);
  for (std::size_t cap : {1u, 3u, 17u}) {
    ReplayBuffer buf(cap);
    std::deque<int> oracle;
    std::uniform_int_distribution<int> op(0, 9);
    for (int i = 0; i < 10000; ++i) {
      buf.push(tagged(i));
      oracle.push_back(i);
      if (oracle.size() > cap) oracle.pop_front();
      if (op(rng) == 0) {
        const auto c = buf.contents();
        REQUIRE(c.size() == oracle.size());
        for (std::size_t j = 0; j < c.size(); ++j) CHECK(tag(c[j]) == oracle[j]);
      }
    }
  }
}

TEST_CASE("sampling from a single entry returns it") {
  ReplayBuffer buf(8);
  buf.push(tagged(42));
  Rng rng(1);
  for (const auto& t : buf.sample(20, rng)) CHECK(tag(t) == 42);
}

TEST_CASE("sampling is uniform (chi-square at 0.001)") {
  ReplayBuffer buf(4);
  for (int i = 0; i < 4; ++i) buf.push(tagged(i));
  Rng rng(2024);
  const int draws = 100000;
  std::vector<int> counts(4, 0);
  for (auto i : buf.sample_indices(draws, rng)) {
    REQUIRE(i < buf.size());
    ++counts[i];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 4.0) * (c - draws / 4.0) / (draws / 4.0);
  const boost::math::chi_squared dist(3);
  CHECK(chi2 < boost::math::quantile(dist, 0.999));
  for (int c : counts) CHECK(std::abs(c / double(draws) - 0.25) < 3 * std::sqrt(0.25 * 0.75 / draws));
}

TEST_CASE("same seed gives the same batch; errors") {
  ReplayBuffer buf(10);
  for (int i = 0; i < 10; ++i) buf.push(tagged(i));
  Rng a(9), b(9);
  const auto x = buf.sample(16, a), y = buf.sample(16, b);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(tag(x[i]) == tag(y[i]));
  ReplayBuffer empty(3);
  CHECK_THROWS_AS(empty.sample(1, a), std::logic_error);
  CHECK_THROWS_AS(ReplayBuffer(0), std::invalid_argument);
  CHECK_THROWS_AS(buf.at(10), std::out_of_range);
}

}  // TEST_SUITE
