"""Learning embeddings for index words/entities and clustering the entries.

Training ranks each observed word-entity pair above randomly sampled
negative entities by a margin.  Each index entry then gets a vector (key
mean concatenated with value mean) and k-means splits the entries into n
clusters, the seeds of the future matching subtasks.
"""

from importlib import resources

from ontodivide import (TrainingConfig, build_lexi, entry_vectors, kmeans,
                        parse_ontology, similarity, train_embeddings)

data = resources.files("ontodivide.data")
o1 = parse_ontology(data.joinpath("anatomy_toy_1.ofn").read_text())
o2 = parse_ontology(data.joinpath("anatomy_toy_2.ofn").read_text())
lexi = build_lexi(o1, o2)

cfg = TrainingConfig(dim=32, epochs=60, negatives=10, margin=0.05,
                     learning_rate=0.05, seed=0)
space = train_embeddings(lexi, cfg)
print(f"trained {len(space.words)} word and {len(space.entities)} entity "
      f"vectors of dimension {space.dim}")
print(f"epoch loss went from {space.epoch_losses[0]:.2f} "
      f"to {space.epoch_losses[-1]:.2f}")

# Words should score their own entities higher than unrelated ones.
print()
print("== similarities after training ==")
heart1 = next(e for e in space.entities if e.iri.endswith("#Heart"))
femur1 = next(e for e in space.entities if e.iri.endswith("#Femur"))
for word in ("heart", "femur"):
    s_heart = similarity(space.word_vector(word), space.entity_vector(heart1))
    s_femur = similarity(space.word_vector(word), space.entity_vector(femur1))
    print(f"sim({word!r}, Heart) = {s_heart:+.3f}   "
          f"sim({word!r}, Femur) = {s_femur:+.3f}")

# Entry vectors concatenate the key-word mean with the value-entity mean.
points = entry_vectors(lexi, space)
print()
print(f"{len(points)} entry vectors of length {points[0][1].shape[0]}")

print()
print("== k-means over the entry vectors ==")
assignment = kmeans(points, n=4, seed=0)
print(f"inertia: {assignment.inertia:.3f} "
      f"after {assignment.n_iter} iterations")
for cluster_id in range(assignment.n):
    keys = sorted(k for k, c in assignment.assignment.items()
                  if c == cluster_id)
    words = sorted({w for k in keys for w in k})
    print(f"cluster {cluster_id}: {len(keys)} entries, "
          f"vocabulary {words[:8]}{' ...' if len(words) > 8 else ''}")
