"""Multi-word-unit candidate extraction and association-measure ranking."""

from .counts import (ContingencyTable, CutoffPolicy, NgramCountTable,
                     apply_cutoff, contingency, count_ngrams, merge_tables)
from .errors import (DataFormatError, InconsistentTableError,
                     MeasureDomainError, MwuRankError, UsageError)
from .measures import MEASURES, check_applicability, score
from .prep import (NormalizationConfig, SegmentedCorpus, build_corpus,
                   normalize, segment, tokenize)
from .ranking import (EvaluationConfig, EvaluationReport, MeasureScore,
                      RankedList, compare_rankings, detect_reduplication,
                      evaluate_rankings, rank, stopword_boundary_filter,
                      validate_bigram_ranking, validate_trigram_ranking)
from .scoring import score_table

__version__ = "0.1.0"
