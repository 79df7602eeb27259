#include "pathrl/replay.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pathrl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity 0");
  storage_.resize(capacity);
}

void ReplayBuffer::push(Transition t) {
  storage_[cursor_] = std::move(t);
  cursor_ = (cursor_ + 1) % storage_.size();
  if (size_ < storage_.size()) ++size_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(
    std::size_t n, std::mt19937_64& rng) const {
  if (size_ == 0) throw std::logic_error("sample_indices: buffer empty");
  std::uniform_int_distribution<std::size_t> dist(0, size_ - 1);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = dist(rng);
  return idx;
}

namespace {

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  char buf[32];
  out << v.size();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), " %.17g", v[i]);
    out << buf;
  }
  out << '\n';
}

Eigen::VectorXd read_vector(std::istream& in) {
  Eigen::Index n;
  if (!(in >> n) || n < 0) throw std::runtime_error("replay file: bad vector");
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(in >> v[i])) throw std::runtime_error("replay file: bad value");
  }
  return v;
}

}  // namespace

void ReplayBuffer::save_file(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open for write: " + file.string());
  out << "pathrl-replay 1\n";
  out << storage_.size() << ' ' << size_ << ' ' << cursor_ << '\n';
  char buf[96];
  for (std::size_t i = 0; i < size_; ++i) {
    const Transition& t = storage_[i];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %d\n", t.a.steer,
                  t.a.accel, t.r, t.d ? 1 : 0);
    out << buf;
    write_vector(out, t.s);
    write_vector(out, t.s_next);
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

ReplayBuffer ReplayBuffer::load_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open for read: " + file.string());
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "pathrl-replay" || version != 1) {
    throw std::runtime_error("not a replay file: " + file.string());
  }
  std::size_t capacity, size, cursor;
  if (!(in >> capacity >> size >> cursor) || size > capacity ||
      cursor >= std::max<std::size_t>(capacity, 1)) {
    throw std::runtime_error("replay file: bad header");
  }
  ReplayBuffer buf(capacity);
  for (std::size_t i = 0; i < size; ++i) {
    Transition t;
    int d;
    if (!(in >> t.a.steer >> t.a.accel >> t.r >> d)) {
      throw std::runtime_error("replay file: bad transition");
    }
    t.d = d != 0;
    t.s = read_vector(in);
    t.s_next = read_vector(in);
    buf.storage_[i] = std::move(t);
  }
  buf.size_ = size;
  buf.cursor_ = cursor;
  return buf;
}

}  // namespace pathrl
