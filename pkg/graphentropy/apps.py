from django.apps import AppConfig


class GraphEntropyConfig(AppConfig):
    name = 'graphentropy'
    verbose_name = 'Gibbs entropy of graphs'
