#include "skein/attachment.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "skein/error.hpp"

namespace skein {

namespace {
constexpr std::size_t kAxiomCheckLimit = 256;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> ids,
                                     std::vector<std::vector<Rational>> table)
    : ids_(std::move(ids)), table_(std::move(table)) {
  const std::size_t n = ids_.size();
  if (table_.size() != n) fail(Errc::InvalidArgument, "distance table size mismatch");
  std::map<std::string, int> seen;
  for (const auto& id : ids_)
    if (++seen[id] > 1) fail(Errc::InvalidArgument, "duplicate point id '" + id + "'");
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[i].size() != n) fail(Errc::InvalidArgument, "distance table row size mismatch");
    if (!table_[i][i].is_zero()) fail(Errc::InvalidArgument, "nonzero self-distance");
    for (std::size_t j = 0; j < i; ++j) {
      if (table_[i][j] != table_[j][i]) fail(Errc::InvalidArgument, "asymmetric distances");
      if (table_[i][j].sign() <= 0)
        fail(Errc::InvalidArgument, "distinct points need positive distance");
    }
  }
  if (n <= kAxiomCheckLimit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
          if (table_[i][j] > table_[i][m] + table_[m][j])
            fail(Errc::InvalidArgument, "triangle inequality fails at (" + ids_[i] + "," +
                                            ids_[j] + "," + ids_[m] + ")");
  }
}

std::size_t FiniteMetricSpace::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) fail(Errc::InvalidArgument, "unknown point id '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

const Rational& FiniteMetricSpace::distance(const std::string& a, const std::string& b) const {
  return distance(index_of(a), index_of(b));
}

FiniteMetricSpace attach(const FiniteMetricSpace& base,
                         const std::vector<AttachmentPiece>& pieces) {
  struct PiecePoint {
    std::size_t piece;
    std::size_t index;  // in the piece's space
  };
  std::vector<std::string> ids = base.ids();
  std::vector<PiecePoint> owners;

  // Validate anchors and the glue isometry, collect non-anchor points.
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& piece = pieces[p];
    if (piece.anchors.empty()) fail(Errc::InvalidArgument, "piece with no anchors");
    if (piece.anchors.size() != piece.glued_to.size())
      fail(Errc::InvalidArgument, "anchor/glue size mismatch");
    for (std::size_t a = 0; a < piece.anchors.size(); ++a) {
      for (std::size_t b = a + 1; b < piece.anchors.size(); ++b) {
        const Rational& dp = piece.space.distance(piece.anchors[a], piece.anchors[b]);
        const Rational& db = base.distance(piece.glued_to[a], piece.glued_to[b]);
        if (dp != db)
          fail(Errc::GlueNotIsometric, "anchors (" + piece.anchors[a] + "," + piece.anchors[b] +
                                           ") of piece " + std::to_string(p) +
                                           " glue non-isometrically: " + dp.str() + " vs " +
                                           db.str());
      }
    }
    for (std::size_t i = 0; i < piece.space.size(); ++i) {
      const std::string& id = piece.space.ids()[i];
      if (std::find(piece.anchors.begin(), piece.anchors.end(), id) != piece.anchors.end())
        continue;
      ids.push_back(id);
      owners.push_back({p, i});
    }
  }

  const std::size_t nb = base.size();
  const std::size_t n = ids.size();

  // Distance from a piece point to a base point: through that piece's anchors.
  auto to_base = [&](const PiecePoint& pp, std::size_t base_idx) {
    const auto& piece = pieces[pp.piece];
    std::optional<Rational> best;
    for (std::size_t a = 0; a < piece.anchors.size(); ++a) {
      Rational d = piece.space.distance(piece.space.ids()[pp.index], piece.anchors[a]) +
                   base.distance(piece.glued_to[a], base.ids()[base_idx]);
      if (!best || d < *best) best = d;
    }
    return *best;
  };

  std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational d(0);
      if (i == j) {
        d = Rational(0);
      } else if (i < nb && j < nb) {
        d = base.distance(i, j);
      } else if (i < nb) {
        d = to_base(owners[j - nb], i);
      } else if (owners[i - nb].piece == owners[j - nb].piece) {
        const auto& piece = pieces[owners[i - nb].piece].space;
        d = piece.distance(owners[i - nb].index, owners[j - nb].index);
      } else {
        // H formula: through both anchor sets.
        const auto& pi = pieces[owners[i - nb].piece];
        const auto& pj = pieces[owners[j - nb].piece];
        std::optional<Rational> best;
        for (std::size_t a = 0; a < pi.anchors.size(); ++a) {
          Rational head = pi.space.distance(pi.space.ids()[owners[i - nb].index], pi.anchors[a]);
          for (std::size_t b = 0; b < pj.anchors.size(); ++b) {
            Rational d2 = head + base.distance(pi.glued_to[a], pj.glued_to[b]) +
                          pj.space.distance(pj.anchors[b], pj.space.ids()[owners[j - nb].index]);
            if (!best || d2 < *best) best = d2;
          }
        }
        d = *best;
      }
      table[i][j] = d;
      table[j][i] = table[i][j];
    }
  }
  return FiniteMetricSpace(std::move(ids), std::move(table));
}

}  // namespace skein
