#pragma once

#include <string>
#include <vector>

#include "skein/rational.hpp"

namespace skein {

/// Finite metric space: string point ids plus an exact distance table.
/// Metric axioms are verified exhaustively on construction for desk-scale
/// sizes.
class FiniteMetricSpace {
public:
  FiniteMetricSpace(std::vector<std::string> ids, std::vector<std::vector<Rational>> table);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t index_of(const std::string& id) const;
  const Rational& distance(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const Rational& distance(const std::string& a, const std::string& b) const;

private:
  std::vector<std::string> ids_;
  std::vector<std::vector<Rational>> table_;
};

/// One piece to glue: its metric space, the anchor subset, and where the
/// anchors land in the base. Point ids must not collide with the base or
/// other pieces (anchors vanish into their base images).
struct AttachmentPiece {
  FiniteMetricSpace space;
  std::vector<std::string> anchors;
  std::vector<std::string> glued_to;  // base ids, aligned with anchors
};

/// Attachment of a base with pieces along anchor isometries: the glued set is
/// the base plus every non-anchor piece point, with distances given by the
/// four-case formula (within base, within a piece, piece-to-base through that
/// piece's anchors, piece-to-piece through both anchor sets). Throws
/// GLUE_NOT_ISOMETRIC when an anchor pair's distances disagree.
FiniteMetricSpace attach(const FiniteMetricSpace& base,
                         const std::vector<AttachmentPiece>& pieces);

}  // namespace skein
