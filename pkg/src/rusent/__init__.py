"""rusent: sentiment classification toolkit for Roman Urdu reviews.

Pipeline: load labeled text directories into ARFF datasets, normalize and
vectorize the text into bag-of-words features, train any of eight
classifiers, and evaluate them on a supplied test set.
"""

__version__ = "0.1.0"
