#pragma once

#include "sentivec/classifiers/bernoulli_nb.hpp"
#include "sentivec/classifiers/common.hpp"
#include "sentivec/classifiers/decision_tree.hpp"
#include "sentivec/classifiers/knn.hpp"
#include "sentivec/classifiers/logistic.hpp"
#include "sentivec/classifiers/svm.hpp"
