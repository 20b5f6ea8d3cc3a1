from rest_framework import serializers

from benchmarks.registry import problem_names
from core.exceptions import InvalidConfig

from .algorithms import ALGORITHMS, check_budget

FIXED_TASK_ALGORITHMS = ('baseline', 'pmto-ft')


# Configuration serializers
class EaSettingsSerializer(serializers.Serializer):
    population_size = serializers.IntegerField(min_value=2)
    generations = serializers.IntegerField(min_value=1)
    eta_c = serializers.FloatField(min_value=1e-12)
    eta_m = serializers.FloatField(min_value=1e-12)
    p_c = serializers.FloatField(min_value=0.0, max_value=1.0)
    p_m = serializers.FloatField(min_value=0.0, max_value=1.0)


class AcquisitionSettingsSerializer(serializers.Serializer):
    candidate_count = serializers.IntegerField(min_value=1)
    refine_steps = serializers.IntegerField(min_value=0)


class GridSettingsSerializer(serializers.Serializer):
    size = serializers.IntegerField(min_value=1, allow_null=True, required=False, default=None)
    sizes = serializers.DictField(child=serializers.IntegerField(min_value=1), required=False, default=dict)
    default_size = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0)


class MinimaxSettingsSerializer(serializers.Serializer):
    budget = serializers.IntegerField(min_value=2)
    split = serializers.FloatField(min_value=0.0, max_value=1.0)
    n_errors = serializers.IntegerField(min_value=1)

    def validate_split(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError("split must lie strictly between 0 and 1")
        return value


class ExperimentConfigSerializer(serializers.Serializer):
    problem = serializers.CharField()
    algorithm = serializers.ChoiceField(choices=ALGORITHMS)
    n_init = serializers.IntegerField(min_value=1)
    n_tot = serializers.IntegerField(min_value=1)
    initial_tasks = serializers.IntegerField(min_value=1)
    beta = serializers.FloatField(min_value=0.0)
    top_p = serializers.FloatField(min_value=0.0, max_value=100.0)
    trials = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0)
    epochs_initial = serializers.IntegerField(min_value=0)
    epochs_warm = serializers.IntegerField(min_value=0)
    learning_rate = serializers.FloatField(min_value=1e-12)
    problem_overrides = serializers.DictField(child=serializers.FloatField(), required=False, default=dict)
    ea = EaSettingsSerializer()
    acquisition = AcquisitionSettingsSerializer()
    grid = GridSettingsSerializer()
    minimax = MinimaxSettingsSerializer()

    def validate_problem(self, value):
        name = value.lower()
        if name not in problem_names():
            raise serializers.ValidationError(f"unknown benchmark {value!r}; choose one of {', '.join(problem_names())}")
        return name

    def validate_top_p(self, value):
        if value <= 0:
            raise serializers.ValidationError("top_p must be positive")
        return value

    def validate(self, attrs):
        try:
            check_budget(attrs['n_init'], attrs['n_tot'], attrs['initial_tasks'],
                         fixed_tasks=attrs['algorithm'] in FIXED_TASK_ALGORITHMS)
        except InvalidConfig as exc:
            key, _, message = str(exc).partition(': ')
            raise serializers.ValidationError({key: message})
        return attrs


# Output serializers
class BoxSerializer(serializers.Serializer):
    lower = serializers.ListField(child=serializers.FloatField())
    upper = serializers.ListField(child=serializers.FloatField())


class GpHyperparamsSerializer(serializers.Serializer):
    lengthscales = serializers.ListField(child=serializers.FloatField(), min_length=1)
    signal_variance = serializers.FloatField()
    noise_variance = serializers.FloatField(min_value=0.0)


class EliteRecordSerializer(serializers.Serializer):
    task_id = serializers.IntegerField()
    theta = serializers.ListField(child=serializers.FloatField())
    best_x = serializers.ListField(child=serializers.FloatField())
    best_y = serializers.FloatField()


class TaskModelSerializer(serializers.Serializer):
    problem = serializers.CharField(required=False)
    algorithm = serializers.CharField(required=False)
    solution_bounds = BoxSerializer()
    task_bounds = BoxSerializer()
    hyperparams = GpHyperparamsSerializer(many=True)
    records = EliteRecordSerializer(many=True, min_length=2)

    def validate(self, attrs):
        if len(attrs['hyperparams']) != len(attrs['solution_bounds']['lower']):
            raise serializers.ValidationError({'hyperparams': "need one entry per solution dimension"})
        return attrs


class TrialSummarySerializer(serializers.Serializer):
    trial = serializers.IntegerField()
    seed = serializers.IntegerField()
    evaluations = serializers.IntegerField()
    pool_size = serializers.IntegerField()
    files = serializers.ListField(child=serializers.CharField())


class ManifestSerializer(serializers.Serializer):
    command = serializers.CharField()
    version = serializers.CharField()
    git_revision = serializers.CharField(allow_null=True)
    started_at = serializers.DateTimeField()
    wall_time_seconds = serializers.FloatField()
    config = serializers.DictField()
    problem = serializers.DictField(required=False)
    trials = TrialSummarySerializer(many=True, required=False)
    evaluation_split = serializers.DictField(child=serializers.IntegerField(), required=False)
