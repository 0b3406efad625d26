"""Toolkit for measuring how two parallel social media collections differ.

The package covers four levels of comparison: whole-corpus statistics,
interaction-network statistics, node centrality rankings, and cluster
memberships. A deterministic collector simulator generates ground-truth
streams and applies configurable collection effects (keyword scope, rate
limits, outages, topic tracking, duplicate delivery) so the comparison
machinery can be exercised against known distortions.
"""

__version__ = "0.1.0"

from .centrality import (CentralityVector, RankComparison, all_centralities,
                         centrality, compare_rankings, dancey_band,
                         export_scatter, ranked_nodes)
from .corpus_stats import (CorpusStats, OverlapStats, TimelineSeries,
                           corpus_stats, overlap, timeline)
from .louvain import Partition, louvain, modularity
from .metrics import NetworkStats, diameter, network_stats, weak_components
from .networks import (CENTRALITY_KINDS, KINDS, MENTION, REPLY, RETWEET,
                       InteractionNetwork, build_mention_network,
                       build_network, build_reply_network,
                       build_retweet_network, read_edges_csv, write_edges_csv,
                       write_nodes_csv)
from .partitions import (PartitionComparison, UndefinedComparisonError,
                         adjusted_rand_index, compare_partitions, rand_index,
                         top_cluster_sizes)
from .records import (Corpus, IngestStats, MalformedRecord, Mention,
                      TweetRecord, TweetRef, anonymize, corpus_from_records,
                      filter_by_keywords, filter_by_lang, ingest_lines,
                      ingest_v11_lines, read_corpus, record_from_json,
                      record_from_v11, record_matches_keywords,
                      record_to_json, write_corpus, write_records)
from .report import (BalanceRow, ComparisonReport, ReportConfig, build_report,
                     report_from_dict, report_to_dict, run_compare,
                     write_report)
from .simulate import (SCENARIOS, Burst, CollectorProfile, Outage,
                       ScenarioRun, StreamSpec, TopicTracking,
                       apply_collector, collect_stream, generate_stream,
                       manifest_lines, scenario, write_scenario)

__all__ = [
    "__version__",
    "Burst", "CentralityVector", "CollectorProfile", "ComparisonReport",
    "CENTRALITY_KINDS", "KINDS", "MENTION", "REPLY", "RETWEET",
    "Corpus", "CorpusStats", "IngestStats", "InteractionNetwork",
    "MalformedRecord", "Mention", "NetworkStats", "Outage", "Partition",
    "PartitionComparison", "RankComparison", "ReportConfig", "BalanceRow",
    "SCENARIOS", "ScenarioRun", "StreamSpec", "TimelineSeries",
    "TopicTracking", "TweetRecord", "TweetRef", "UndefinedComparisonError",
    "OverlapStats",
    "adjusted_rand_index", "all_centralities", "anonymize", "apply_collector",
    "build_mention_network", "build_network", "build_reply_network",
    "build_report", "build_retweet_network", "centrality", "collect_stream",
    "compare_partitions", "compare_rankings", "corpus_from_records",
    "corpus_stats", "dancey_band", "diameter", "export_scatter",
    "filter_by_keywords", "filter_by_lang", "generate_stream", "ingest_lines",
    "ingest_v11_lines", "louvain", "manifest_lines", "modularity",
    "network_stats", "overlap",
    "rand_index", "ranked_nodes", "read_corpus", "read_edges_csv",
    "record_from_json", "record_from_v11", "record_matches_keywords",
    "record_to_json",
    "report_from_dict", "report_to_dict", "run_compare", "scenario",
    "timeline", "top_cluster_sizes", "weak_components", "write_corpus",
    "write_edges_csv", "write_nodes_csv", "write_records", "write_report",
    "write_scenario",
]
